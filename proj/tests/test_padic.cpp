#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "pzeta/padic.hpp"

using namespace pzeta;

namespace {

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

TEST_CASE("mu formula") {
  CHECK(axkatz_mu({1, 1, 1, 1}, {2}) == 1);
  CHECK(axkatz_mu({2, 2}, {5}) == 0);   // negative clamps
  CHECK(axkatz_mu({1, 2}, {3}) == 0);   // lcm = 2: (3-6)/3 < 0
  CHECK(axkatz_mu({1, 1, 1}, {1}) == 2);
  CHECK(axkatz_mu({1, 1, 1}, {1, 1}) == 1);
  CHECK(axkatz_mu({1, 1, 1, 1, 1}, {2, 3}) == 0);  // (5-5)/3 = 0
  CHECK(thrown_kind([] { axkatz_mu({1, 1}, {0}); }) == Err::ZeroDegree);
  CHECK(thrown_kind([] { axkatz_mu({1, 1}, {}); }) == Err::InvalidArgument);
  CHECK(thrown_kind([] { axkatz_mu({}, {1}); }) == Err::InvalidArgument);
}

TEST_CASE("mu monotonicity at fixed lcm") {
  // raising one d_i (inside the divisors of a fixed lcm) never lowers mu
  std::mt19937 rng(5);
  std::vector<std::uint32_t> divisors = {1, 2, 3, 6};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> d(3);
    for (auto& x : d) x = divisors[rng() % 4];
    d.back() = 6;  // pins lcm(d) = 6
    std::vector<long> D = {1 + static_cast<long>(rng() % 3),
                           1 + static_cast<long>(rng() % 3)};
    long base = axkatz_mu(d, D);
    // bump d[0] to the next divisor, lcm unchanged
    std::size_t i = 0;
    while (divisors[i] != d[0]) ++i;
    if (i + 1 < divisors.size()) {
      auto d2 = d;
      d2[0] = divisors[i + 1];
      CHECK(axkatz_mu(d2, D) >= base);
    }
    // raising a degree never raises mu
    auto D2 = D;
    D2[0] += 1;
    CHECK(axkatz_mu(d, D2) <= base);
  }
}

TEST_CASE("ord_q") {
  OrdQ a = ord_q(Int(8), 2, 1);
  CHECK_FALSE(a.infinite);
  CHECK(a.value == 3);
  CHECK(ord_q(Int(0), 2, 1).infinite);
  OrdQ b = ord_q(Int(50), 5, 2);
  CHECK(b.value == 1);  // v_5(50) = 2, e = 2
  OrdQ c = ord_q(Int(5), 5, 2);
  CHECK(c.value == Rat(1, 2));
}

TEST_CASE("verify_axkatz") {
  // hyperplane x1 + x2 = 0 over F_3: N_k = 3^k, mu = 1, ord = k
  FieldSpec f3 = make_field_spec(3, 1);
  std::vector<Poly> plane = {parse_poly("x1 + x2", 2, f3)};
  AxKatzReport rep = verify_axkatz(plane, {1, 1}, 3);
  CHECK(rep.applicable);
  CHECK(rep.mu == 1);
  CHECK(rep.all_pass);
  REQUIRE(rep.rows.size() == 3);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    CHECK(rep.rows[k - 1].count == ipow(3, k));
    CHECK(rep.rows[k - 1].ord.value == k);
    CHECK(rep.rows[k - 1].pass);
  }

  // mu = 2 with equality in the bound: x1+x2+x3 over F_2, N_k = 4^k
  FieldSpec f2 = make_field_spec(2, 1);
  std::vector<Poly> p3 = {parse_poly("x1 + x2 + x3", 3, f2)};
  AxKatzReport r3 = verify_axkatz(p3, {1, 1, 1}, 3);
  CHECK(r3.mu == 2);
  CHECK(r3.all_pass);

  // affine space: no equations cut anything, bound not applicable
  std::vector<Poly> aff = {parse_poly("0", 2, f3)};
  AxKatzReport ra = verify_axkatz(aff, {1, 2}, 2);
  CHECK_FALSE(ra.applicable);
  CHECK(ra.all_pass);
  CHECK(ra.rows.empty());

  // a nonzero constant has degree 0, outside the theorem's hypotheses
  std::vector<Poly> cst = {parse_poly("1", 2, f3)};
  AxKatzReport rk = verify_axkatz(cst, {1, 2}, 2);
  CHECK_FALSE(rk.applicable);
  CHECK(rk.all_pass);

  // ... but alongside a real equation it just empties the variety, and the
  // bound on the surviving degree passes vacuously (every count is 0)
  std::vector<Poly> mixed = {parse_poly("x1 + x2", 2, f3),
                             parse_poly("1", 2, f3)};
  AxKatzReport rm = verify_axkatz(mixed, {1, 1}, 2);
  CHECK(rm.applicable);
  CHECK(rm.mu == 1);
  CHECK(rm.all_pass);
  REQUIRE(rm.rows.size() == 2);
  CHECK(rm.rows[0].count == 0);
  CHECK(rm.rows[0].ord.infinite);

  // mixed-d curve, vacuous mu but real count data
  FieldSpec f5 = make_field_spec(5, 1);
  std::vector<Poly> cusp = {parse_poly("x2^2 - x1^3 - 1", 2, f5)};
  AxKatzReport rc = verify_axkatz(cusp, {1, 2}, 2);
  CHECK(rc.applicable);
  CHECK(rc.mu == 0);
  CHECK(rc.all_pass);
  CHECK(rc.rows[0].count == 9);
}
