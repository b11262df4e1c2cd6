#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pzeta/poly.hpp"

using namespace pzeta;

namespace {

template <class Fn>
Err thrown_kind(Fn&& fn) {
  try {
    fn();
  } catch (const PzetaError& e) {
    return e.kind();
  }
  FAIL("expected a PzetaError");
  return Err::InvalidArgument;
}

const FieldSpec F5 = make_field_spec(5, 1);
const FieldSpec F2 = make_field_spec(2, 1);
const FieldSpec F4 = make_field_spec(2, 2);

}  // namespace

TEST_CASE("parsing and canonical printing") {
  Poly f = parse_poly("x1^2*x2 - 3*x2 + 1", 2, F5);
  CHECK(f.terms.size() == 3);
  CHECK(poly_to_string(f) == "x1^2*x2 + 2*x2 + 1");
  CHECK(poly_total_degree(f) == 3);
  CHECK(poly_degree_in(f, 0) == 2);
  CHECK(poly_degree_in(f, 1) == 1);

  // whitespace and redundant parens do not matter
  Poly g = parse_poly("  ( x1^2 * x2 )+(- 3 )*x2+ 1 ", 2, F5);
  CHECK(f == g);

  // like terms merge and cancel
  Poly h = parse_poly("x1 + 4*x1", 1, F5);
  CHECK(poly_is_zero(h));
  CHECK(poly_to_string(h) == "0");
}

TEST_CASE("round trips") {
  for (const char* src : {
           "x1^2*x2 - 3*x2 + 1",
           "(x1+x2)^3 - x3^2",
           "2*x1*x2*x3 + 4",
           "-x1^7 + x2 - 2",
       }) {
    Poly f = parse_poly(src, 3, F5);
    Poly g = parse_poly(poly_to_string(f), 3, F5);
    CHECK(f == g);
  }
}

TEST_CASE("parser rejects malformed input with positions") {
  CHECK(thrown_kind([] { parse_poly("x3", 2, F5); }) == Err::UnknownVariable);
  CHECK(thrown_kind([] { parse_poly("x0", 2, F5); }) == Err::UnknownVariable);
  CHECK(thrown_kind([] { parse_poly("x1 + * x2", 2, F5); }) == Err::Parse);
  CHECK(thrown_kind([] { parse_poly("(x1", 2, F5); }) == Err::Parse);
  CHECK(thrown_kind([] { parse_poly("", 2, F5); }) == Err::Parse);
  CHECK(thrown_kind([] { parse_poly("x1 $", 2, F5); }) == Err::Parse);
  CHECK(thrown_kind([] { parse_poly("g*x1", 1, F5); }) == Err::UnknownVariable);
  CHECK(thrown_kind([] { parse_poly("x1^9999999", 1, F5); }) == Err::Parse);
  try {
    parse_poly("x1 + x9", 2, F5, 14);
  } catch (const PzetaError& e) {
    CHECK(e.kind() == Err::UnknownVariable);
    CHECK(e.line() == 14);
    CHECK(e.col() == 6);
  }
}

TEST_CASE("generator arithmetic over F_4") {
  // g^2 = g + 1 mod (x^2 + x + 1)
  Poly a = parse_poly("g^2", 1, F4);
  Poly b = parse_poly("g + 1", 1, F4);
  CHECK(a == b);
  Poly c = parse_poly("g^3", 1, F4);
  CHECK(c == parse_poly("1", 1, F4));
  // printing keeps compound coefficients parenthesized
  Poly f = parse_poly("(g+1)*x1 + g", 1, F4);
  CHECK(poly_to_string(f) == "(g+1)*x1 + g");
  CHECK(parse_poly(poly_to_string(f), 1, F4) == f);
}

TEST_CASE("ring operations") {
  Poly x1 = parse_poly("x1", 2, F5);
  Poly x2 = parse_poly("x2", 2, F5);
  Poly s = poly_add(x1, x2);
  CHECK(poly_mul(s, s) == parse_poly("x1^2 + 2*x1*x2 + x2^2", 2, F5));
  CHECK(poly_pow(s, 0) == parse_poly("1", 2, F5));
  // freshman's dream in characteristic 2 and 5
  Poly t = poly_add(parse_poly("x1", 2, F2), parse_poly("x2", 2, F2));
  CHECK(poly_pow(t, 2) == parse_poly("x1^2 + x2^2", 2, F2));
  CHECK(poly_pow(s, 5) == parse_poly("x1^5 + x2^5", 2, F5));
  CHECK(poly_sub(x1, x1) == zero_poly(F5, 2));
  CHECK(const_poly(F5, 2, -1) == parse_poly("4", 2, F5));
  CHECK(thrown_kind([&] { poly_add(x1, parse_poly("x1", 3, F5)); }) ==
        Err::DegreeMismatch);
}

TEST_CASE("evaluation in an ambient field") {
  Poly f = parse_poly("x1^2*x2 - 3*x2 + 1", 2, F5);
  AmbientField F(F5, 2);  // F_25
  AmbientPoly lf = lift_poly(f, F);
  FieldElement v = eval_poly(lf, F, {F.from_int(2), F.from_int(3)});
  CHECK(v == F.from_int(4));  // 4*3 + 2*3 + 1 = 19 = 4 (mod 5)

  // coefficients involving g
  AmbientField G(F4, 2);  // F_16 over F_4
  Poly h = parse_poly("g*x1 + 1", 1, F4);
  AmbientPoly lh = lift_poly(h, G);
  FieldElement gv = G.base_root();
  // g*g + 1 = (g+1) + 1 = g
  CHECK(eval_poly(lh, G, {gv}) == gv);

  CHECK(thrown_kind([&] { lift_poly(h, F); }) == Err::DegreeMismatch);
  CHECK(thrown_kind([&] { eval_poly(lf, F, {F.from_int(1)}); }) ==
        Err::DegreeMismatch);
}

TEST_CASE("specialization") {
  Poly f = parse_poly("x1^2*x2 - 3*x2 + 1", 2, F5);
  AmbientField F(F5, 2);
  AmbientPoly lf = lift_poly(f, F);
  AmbientPoly at2 = specialize_poly(lf, F, 0, F.from_int(2));
  // (4 + 2) x2 + 1 = x2 + 1: two terms survive
  CHECK(at2.terms.size() == 2);
  for (auto x2v : {0, 1, 2, 3, 4}) {
    FieldElement direct =
        eval_poly(lf, F, {F.from_int(2), F.from_int(x2v)});
    FieldElement via = eval_poly(at2, F, {F.zero(), F.from_int(x2v)});
    CHECK(direct == via);
  }
  // full specialization leaves a constant
  AmbientPoly cst = specialize_poly(at2, F, 1, F.from_int(3));
  CHECK(cst.terms.size() == 1);
  CHECK(cst.terms[0].second == F.from_int(4));
}
