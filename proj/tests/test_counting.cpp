#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "pzeta/counting.hpp"

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

}  // namespace

TEST_CASE("hand-checked partial counts") {
  // y^2 = x^3 + 1 over F_5 with x classical, y quadratic: for each x in F_5
  // the value x^3+1 is a square in F_25 (F_5* sits inside the index-2
  // subgroup), so 2 roots when nonzero, 1 when zero (only x = 4).
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> curve = {P(f5, 2, "x2^2 - x1^3 - 1")};
  CHECK(count_partial(curve, {1, 2}, 1) == 9);
  CHECK(count_partial_bruteforce(curve, {1, 2}, 1) == 9);

  // y^2 = x^3 - x over F_5: x^3-x has its 3 roots already in F_5, every other
  // value of x contributes 2 square roots in the quadratic extension.
  std::vector<Poly> curve2 = {P(f5, 2, "x2^2 - x1^3 + x1")};
  for (std::uint32_t k = 1; k <= 3; ++k)
    CHECK(count_partial(curve2, {1, 2}, k) == 2 * ipow(5, k) - 3);

  // y^2 = x^3 + 1 = (x+1)^3 over F_3: one x with a single root, the rest
  // contribute 2 each, so N_k = 2*3^k - 1.
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> cusp = {P(f3, 2, "x2^2 - x1^3 - 1")};
  for (std::uint32_t k = 1; k <= 4; ++k)
    CHECK(count_partial(cusp, {1, 2}, k) == 2 * ipow(3, k) - 1);

  // x1*x2 = 1 over F_2 with d = (2,3): x1 must lie in the intersection
  // F_{4^k} Int F_{8^k} = F_{2^k}, minus zero.
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> hyp = {P(f2, 2, "x1*x2 - 1")};
  for (std::uint32_t k = 1; k <= 4; ++k)
    CHECK(count_partial(hyp, {2, 3}, k) == ipow(2, k) - 1);

  // hyperplane x1+x2+x3 = 0, d = (2,1,1): x3 = -x1-x2 lands in F_{3^k}
  // exactly when x1 does, so N_k = 3^{2k}.
  std::vector<Poly> plane = {P(f3, 3, "x1 + x2 + x3")};
  CHECK(count_partial(plane, {2, 1, 1}, 1) == 9);
  CHECK(count_partial(plane, {2, 1, 1}, 2) == 81);
  CHECK(count_partial(plane, {1, 1, 2}, 1) == 9);

  // affine space via the zero polynomial
  std::vector<Poly> affine = {P(f2, 3, "0")};
  CHECK(count_partial(affine, {1, 2, 3}, 1) == 64);
  CHECK(count_partial(affine, {1, 2, 3}, 2) == 4096);
}

TEST_CASE("classical counts are the d = (1,..,1) case") {
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> circle = {P(f5, 2, "x1^2 + x2^2 - 1")};
  CHECK(count_classical(circle, 1) == 4);  // q = 1 mod 4: q - 1 points
  CHECK(count_classical(circle, 1) == count_partial(circle, {1, 1}, 1));
  CHECK(count_classical(circle, 2) == count_partial(circle, {1, 1}, 2));

  FieldSpec f7 = make_field_spec(7, 1);
  std::vector<Poly> hyp = {P(f7, 2, "x1*x2 - 1")};
  CHECK(count_classical(hyp, 1) == 6);
}

TEST_CASE("kernel agrees with the bruteforce oracle on random systems") {
  std::mt19937 rng(7);
  struct Cfg {
    std::uint32_t p, e;
    std::vector<std::uint32_t> d;
    std::uint32_t kmax;
  };
  std::vector<Cfg> cfgs = {
      {2, 1, {1, 1}, 2}, {2, 1, {1, 2}, 2}, {2, 1, {2, 1}, 2},
      {2, 1, {2, 2}, 1}, {2, 1, {1, 3}, 1}, {3, 1, {1, 2}, 1},
      {3, 1, {2, 2}, 1}, {5, 1, {1, 2}, 1}, {5, 1, {1, 3}, 1},
      {2, 2, {1, 2}, 1}, {2, 2, {2, 1}, 1},
  };
  for (const Cfg& cfg : cfgs) {
    FieldSpec fs = make_field_spec(cfg.p, cfg.e);
    for (int trial = 0; trial < 4; ++trial) {
      // random system of 1..2 polynomials in 2 variables
      std::uniform_int_distribution<int> neq(1, 2), nterm(1, 4), expo(0, 3);
      std::uniform_int_distribution<std::uint32_t> coef(1, cfg.p - 1);
      std::vector<Poly> eqs;
      int ne = neq(rng);
      for (int i = 0; i < ne; ++i) {
        std::ostringstream os;
        int nt = nterm(rng);
        for (int t = 0; t < nt; ++t) {
          if (t) os << " + ";
          os << coef(rng) << "*x1^" << expo(rng) << "*x2^" << expo(rng);
        }
        eqs.push_back(P(fs, 2, os.str()));
      }
      for (std::uint32_t k = 1; k <= cfg.kmax; ++k) {
        CAPTURE(cfg.p);
        CAPTURE(cfg.e);
        CAPTURE(k);
        CAPTURE(poly_to_string(eqs[0]));
        Int fast = count_partial(eqs, cfg.d, k);
        Int slow = count_partial_bruteforce(eqs, cfg.d, k);
        CHECK(fast == slow);
      }
    }
  }
}

TEST_CASE("counts do not depend on the ambient modulus or variable order") {
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> curve = {P(f5, 2, "x2^2 - x1^3 + x1")};
  Int base = count_partial(curve, {1, 2}, 1);
  CHECK(count_partial(curve, {1, 2}, 1, {}, nullptr, 1) == base);
  CHECK(count_partial_bruteforce(curve, {1, 2}, 1, {}, nullptr, 1) == base);

  // permute the variables along with d
  std::vector<Poly> swapped = {P(f5, 2, "x1^2 - x2^3 + x2")};
  CHECK(count_partial(swapped, {2, 1}, 1) == base);
  CHECK(count_partial(swapped, {2, 1}, 2) == count_partial(curve, {1, 2}, 2));

  FieldSpec f4 = make_field_spec(2, 2);
  std::vector<Poly> q4 = {P(f4, 2, "x1*x2 + g")};
  CHECK(count_partial(q4, {1, 2}, 1, {}, nullptr, 1) ==
        count_partial(q4, {1, 2}, 1));
}

TEST_CASE("node accounting is deterministic and budget errors fire") {
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> hyp = {P(f2, 2, "x1*x2 - 1")};

  // k=1, d=(2,3): 4 assignments of x1, each resolved by one last-variable
  // node -> 8 nodes exactly.
  CountStats st;
  CHECK(count_partial(hyp, {2, 3}, 1, {}, &st) == 1);
  CHECK(st.nodes == 8);
  CountStats st2;
  CHECK(count_partial(hyp, {2, 3}, 1, {}, &st2) == 1);
  CHECK(st2.nodes == st.nodes);

  // bruteforce walks the full grid: 4 + 4*8 assignments
  CountStats stb;
  CHECK(count_partial_bruteforce(hyp, {2, 3}, 1, {}, &stb) == 1);
  CHECK(stb.nodes == 36);

  // shortcut A: the zero system costs no nodes at all
  std::vector<Poly> affine = {P(f2, 2, "0")};
  CountStats sta;
  CHECK(count_partial(affine, {2, 3}, 1, {}, &sta) == 32);
  CHECK(sta.nodes == 0);

  // budget boundary: 8 nodes fit, 7 do not
  Budget ok;
  ok.max_nodes = 8;
  CHECK(count_partial(hyp, {2, 3}, 1, ok) == 1);
  Budget tight;
  tight.max_nodes = 7;
  CHECK(thrown_kind([&] { count_partial(hyp, {2, 3}, 1, tight); }) ==
        Err::BudgetExceeded);
  CHECK(thrown_kind([&] { count_partial_bruteforce(hyp, {2, 3}, 1, tight); }) ==
        Err::BudgetExceeded);

  // oversized ambient field is rejected up front
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> big = {P(f5, 2, "x1 + x2")};
  CHECK(thrown_kind([&] { count_partial(big, {5, 7}, 2); }) ==
        Err::BudgetExceeded);
}

TEST_CASE("count_series matches per-k calls under one budget") {
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> cusp = {P(f3, 2, "x2^2 - x1^3 - 1")};
  std::vector<Int> ns = count_series(cusp, {1, 2}, 4);
  REQUIRE(ns.size() == 4);
  CHECK(ns[0] == 5);
  CHECK(ns[1] == 17);
  CHECK(ns[2] == 53);
  CHECK(ns[3] == 161);
  for (std::uint32_t k = 1; k <= 4; ++k)
    CHECK(ns[k - 1] == count_partial(cusp, {1, 2}, k));

  // the budget is cumulative across the whole series
  CountStats s1, s4;
  count_partial(cusp, {1, 2}, 1, {}, &s1);
  count_series(cusp, {1, 2}, 4, {}, &s4);
  CHECK(s4.nodes > s1.nodes);
  Budget b;
  b.max_nodes = s1.nodes;  // enough for k=1 alone
  CHECK(count_partial(cusp, {1, 2}, 1, b) == 5);
  CHECK(thrown_kind([&] { count_series(cusp, {1, 2}, 4, b); }) ==
        Err::BudgetExceeded);
}

TEST_CASE("generalized counts via coordinate maps reduce to partial counts") {
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> cusp = {P(f3, 2, "x2^2 - x1^3 - 1")};
  std::vector<Poly> id = {P(f3, 2, "x1"), P(f3, 2, "x2")};
  CHECK(count_generalized(cusp, id, {1, 2}, 1) == 5);
  CHECK(count_generalized(cusp, id, {1, 2}, 2) == 17);

  // projection of the parabola x2 = x1^2 to its x1 coordinate is injective;
  // asking for x1 in F_{9^k} picks up every F_9-point of the parabola.
  std::vector<Poly> parab = {P(f3, 2, "x2 - x1^2")};
  std::vector<Poly> proj = {P(f3, 2, "x1")};
  CHECK(count_generalized(parab, proj, {2}, 1) == 9);
  CHECK(count_generalized(parab, proj, {1}, 2) == 9);

  // a visibly non-injective map must be reported, not silently miscounted
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> plane2 = {P(f2, 2, "0")};
  std::vector<Poly> sum = {P(f2, 2, "x1 + x2")};
  CHECK(thrown_kind([&] { count_generalized(plane2, sum, {1}, 1); }) ==
        Err::InjectivityViolated);
}

TEST_CASE("argument validation") {
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> eqs = {P(f3, 2, "x1 + x2")};
  CHECK(thrown_kind([&] { count_partial({}, {1, 2}, 1); }) ==
        Err::InvalidArgument);
  CHECK(thrown_kind([&] { count_partial(eqs, {1, 2}, 0); }) ==
        Err::InvalidArgument);
  CHECK(thrown_kind([&] { count_partial(eqs, {1, 0}, 1); }) ==
        Err::InvalidArgument);
  CHECK(thrown_kind([&] { count_partial(eqs, {1, 2, 3}, 1); }) ==
        Err::DegreeMismatch);
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> mixed = {P(f3, 2, "x1"), P(f5, 2, "x2")};
  CHECK(thrown_kind([&] { count_partial(mixed, {1, 1}, 1); }) ==
        Err::DegreeMismatch);
  CHECK(thrown_kind([&] { count_series(eqs, {1, 2}, 0); }) ==
        Err::InvalidArgument);
  CHECK(thrown_kind([&] { lcm_of({0}); }) == Err::InvalidArgument);
  CHECK(lcm_of({4, 6}) == 12);
  CHECK(thrown_kind([&] {
          count_generalized(eqs, {P(f3, 2, "x1")}, {1, 2}, 1);
        }) == Err::InvalidArgument);
}

TEST_CASE("counts over a non-prime base field") {
  // x1*x2 = 1 over F_4 with d = (1,2): x1 in F_{4^k} nonzero forces
  // x2 = 1/x1 in F_{4^k} already, so N_k = 4^k - 1.
  FieldSpec f4 = make_field_spec(2, 2);
  std::vector<Poly> hyp = {P(f4, 2, "x1*x2 - 1")};
  for (std::uint32_t k = 1; k <= 2; ++k) {
    CHECK(count_partial(hyp, {1, 2}, k) == ipow(4, k) - 1);
    CHECK(count_partial(hyp, {1, 2}, k) ==
          count_partial_bruteforce(hyp, {1, 2}, k));
  }
  // translate by the generator: x1*x2 = g
  std::vector<Poly> hg = {P(f4, 2, "x1*x2 - g")};
  CHECK(count_partial(hg, {1, 2}, 1) == 3);
  CHECK(count_partial(hg, {1, 2}, 1) == count_partial_bruteforce(hg, {1, 2}, 1));
}
