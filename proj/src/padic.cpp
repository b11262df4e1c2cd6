#include "pzeta/padic.hpp"

#include <algorithm>
#include <numeric>

namespace pzeta {

long axkatz_mu(const std::vector<std::uint32_t>& d,
               const std::vector<long>& degrees) {
  if (d.empty()) fail(Err::InvalidArgument, "need at least one d_i");
  if (degrees.empty()) fail(Err::InvalidArgument, "need at least one degree");
  for (long D : degrees)
    if (D < 1) fail(Err::ZeroDegree, "equation degrees must be >= 1");
  long long sum_d = 0;
  for (auto di : d) sum_d += di;
  long long L = static_cast<long long>(lcm_of(d));
  long long sum_D = 0;
  long long max_D = 0;
  for (long D : degrees) {
    sum_D += D;
    max_D = std::max<long long>(max_D, D);
  }
  long long num = sum_d - L * sum_D;
  long long q = num / max_D;
  if (num % max_D > 0) ++q;  // ceil for positive remainders
  return static_cast<long>(std::max<long long>(0, q));
}

OrdQ ord_q(const Int& n, std::uint32_t p, std::uint32_t e) {
  if (e < 1) fail(Err::InvalidArgument, "e must be >= 1");
  OrdQ r;
  if (n == 0) {
    r.infinite = true;
    return r;
  }
  r.value = Rat(static_cast<long>(valuation(n, p)), static_cast<long>(e));
  r.value.canonicalize();
  return r;
}

AxKatzReport verify_axkatz(const std::vector<Poly>& eqs,
                           const std::vector<std::uint32_t>& d,
                           std::uint32_t kmax, const Budget& budget,
                           CountStats* stats) {
  if (kmax < 1) fail(Err::InvalidArgument, "kmax must be >= 1");
  if (eqs.empty())
    fail(Err::InvalidArgument,
         "need at least one polynomial (use 0 for affine space)");
  AxKatzReport rep;
  std::vector<long> degrees;
  for (const Poly& f : eqs) {
    long D = poly_total_degree(f);
    // Zero and constant equations carry no degree information; the bound
    // only addresses polynomials of degree >= 1.
    if (D >= 1) degrees.push_back(D);
  }
  if (degrees.empty()) {
    rep.applicable = false;
    rep.all_pass = true;  // nothing to bound
    return rep;
  }
  rep.applicable = true;
  rep.mu = axkatz_mu(d, degrees);
  std::vector<Int> counts = count_series(eqs, d, kmax, budget, stats);
  std::uint32_t p = eqs[0].field.p;
  std::uint32_t e = eqs[0].field.e;
  rep.all_pass = true;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    AxKatzReport::Row row;
    row.k = k;
    row.count = counts[k - 1];
    row.ord = ord_q(row.count, p, e);
    row.pass = row.ord.infinite ||
               row.ord.value >= Rat(static_cast<long>(k) * rep.mu);
    if (!row.pass) rep.all_pass = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace pzeta
