#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pzeta/faltings.hpp"

using namespace pzeta;

namespace {

Poly P(const FieldSpec& fs, std::uint32_t nvars, const std::string& src) {
  return parse_poly(src, nvars, fs);
}

Err thrown_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const PzetaError& e) {
    return e.kind();
  }
  FAIL("expected a PzetaError");
  return Err::InvalidArgument;
}

TwistedPoint tuple_of(const AmbientField& F, std::vector<std::vector<long>> v) {
  TwistedPoint y;
  for (auto& comp : v) {
    std::vector<FieldElement> c;
    for (long x : comp) c.push_back(F.from_int(x));
    y.comps.push_back(std::move(c));
  }
  return y;
}

}  // namespace

TEST_CASE("sigma is the cyclic shift and sigma^L = id") {
  FieldSpec f5 = make_field_spec(5, 1);
  AmbientField F(f5, 2);
  TwistedPoint y = tuple_of(F, {{1, 2}, {3, 4}, {0, 1}});
  TwistedPoint s = sigma(y);
  CHECK(s.comps[0] == y.comps[2]);
  CHECK(s.comps[1] == y.comps[0]);
  CHECK(s.comps[2] == y.comps[1]);
  TwistedPoint z = y;
  for (int i = 0; i < 3; ++i) z = sigma(z);
  CHECK(z.comps == y.comps);
  // L = 1: identity
  TwistedPoint one = tuple_of(F, {{4}});
  CHECK(sigma(one).comps == one.comps);
}

TEST_CASE("grid_holds checks the identification") {
  FieldSpec f3 = make_field_spec(3, 1);
  AmbientField F(f3, 2);
  // d = (1,2), L = 2: coordinate 1 must agree across components
  TwistedPoint good = tuple_of(F, {{2, 0}, {2, 1}});
  CHECK(grid_holds(good, {1, 2}));
  TwistedPoint bad = tuple_of(F, {{2, 0}, {1, 1}});
  CHECK_FALSE(grid_holds(bad, {1, 2}));
}

TEST_CASE("fixed points of sigma o Frob^k equal partial counts") {
  // A^1 over F_2, d = (2): the four tuples (a, a^2), a in F_4
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> line = {P(f2, 1, "0")};
  CHECK(fixed_points_sigma_frob(line, {2}, 1) == 4);
  CHECK(fixed_points_sigma_frob(line, {2}, 1) == count_partial(line, {2}, 1));

  // the origin in A^1 stays a single fixed point for any d, k
  std::vector<Poly> origin = {P(f2, 1, "x1")};
  CHECK(fixed_points_sigma_frob(origin, {2}, 1) == 1);
  CHECK(fixed_points_sigma_frob(origin, {3}, 2) == 1);

  // diagonal x1 = x2 in A^2 over F_3, d = (1,2)
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> diag = {P(f3, 2, "x1 - x2")};
  CHECK(fixed_points_sigma_frob(diag, {1, 2}, 1) == 3);
  CHECK(count_partial(diag, {1, 2}, 1) == 3);

  // full plane over F_2, d = (1,2): grid filtering is visible here
  std::vector<Poly> plane = {P(f2, 2, "0")};
  CHECK(fixed_points_sigma_frob(plane, {1, 2}, 1) == 8);

  // cuspidal cubic over F_3
  std::vector<Poly> cusp = {P(f3, 2, "x2^2 - x1^3 - 1")};
  CHECK(fixed_points_sigma_frob(cusp, {1, 2}, 1) == 5);
  CHECK(fixed_points_sigma_frob(cusp, {1, 2}, 2) == 17);

  // non-dividing d = (2,3): L = 6, heavy grid pruning, count collapses to 1
  std::vector<Poly> hyp = {P(f2, 2, "x1*x2 - 1")};
  CHECK(fixed_points_sigma_frob(hyp, {2, 3}, 1) == 1);
  CHECK(count_partial(hyp, {2, 3}, 1) == 1);
}

TEST_CASE("verify_y_membership confirms the structural claims") {
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> curve = {P(f5, 2, "x2^2 - x1^3 - 1")};
  YMembershipReport rep = verify_y_membership(curve, {1, 2}, 1);
  CHECK(rep.fixed_points == 9);
  CHECK(rep.sigma_stable);
  CHECK(rep.first_components_in_subfields);
  CHECK(rep.first_components_distinct);
  CHECK(rep.y_points >= rep.fixed_points);

  // equal d: the grid is vacuous, Y = X^1 here (L = d = 2 with one variable)
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> line = {P(f2, 1, "0")};
  YMembershipReport rl = verify_y_membership(line, {2}, 1);
  CHECK(rl.y_points == 16);  // all of A^1(F_4)^2
  CHECK(rl.fixed_points == 4);
  CHECK(rl.sigma_stable);
}

TEST_CASE("budget and argument errors") {
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> diag = {P(f3, 2, "x1 - x2")};
  Budget tight;
  tight.max_nodes = 3;
  CHECK(thrown_kind([&] { fixed_points_sigma_frob(diag, {1, 2}, 1, tight); }) ==
        Err::BudgetExceeded);
  CHECK(thrown_kind([&] { fixed_points_sigma_frob(diag, {1, 2}, 0); }) ==
        Err::InvalidArgument);
  CHECK(thrown_kind([&] { fixed_points_sigma_frob(diag, {1}, 1); }) ==
        Err::DegreeMismatch);
  CHECK(thrown_kind([&] { fixed_points_sigma_frob({}, {1, 2}, 1); }) ==
        Err::InvalidArgument);
}
