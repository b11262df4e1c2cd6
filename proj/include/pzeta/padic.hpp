#pragma once
// Ax-Katz-style q-adic lower bound for partial counts and its verification.

#include "pzeta/counting.hpp"

namespace pzeta {

// mu = max(0, ceil((sum d_i - lcm(d) * sum D_j) / max D_j)), the exponent in
// ord_q N_k >= k mu.  degrees are the total degrees D_j of the defining
// equations; any entry < 1 is rejected (ZeroDegree), and the caller decides
// what an empty list means (see verify_axkatz).
long axkatz_mu(const std::vector<std::uint32_t>& d,
               const std::vector<long>& degrees);

// ord_q(N) = v_p(N) / e; N = 0 is infinite (vacuously above any bound).
struct OrdQ {
  bool infinite = false;
  Rat value;
};
OrdQ ord_q(const Int& n, std::uint32_t p, std::uint32_t e);

struct AxKatzReport {
  bool applicable = false;  // false iff every equation is the zero polynomial
  long mu = 0;
  struct Row {
    std::uint32_t k = 0;
    Int count;
    OrdQ ord;
    bool pass = false;
  };
  std::vector<Row> rows;
  bool all_pass = false;  // vacuously true when not applicable
};

// Counts N_1..N_kmax and checks ord_q(N_k) >= k mu for each.  Zero
// polynomials are dropped from the degree list (they do not cut anything);
// if nothing remains the bound is declared not applicable.
AxKatzReport verify_axkatz(const std::vector<Poly>& eqs,
                           const std::vector<std::uint32_t>& d,
                           std::uint32_t kmax, const Budget& budget = {},
                           CountStats* stats = nullptr);

}  // namespace pzeta
