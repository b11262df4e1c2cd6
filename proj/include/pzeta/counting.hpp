#pragma once
// Point counting kernels for partial counts N_{d_1..d_n}(k, X): the number
// of solutions of the system X with coordinate x_i ranging over F_{q^{d_i k}}.
//
// The main kernel walks variables in input order inside the ambient field
// F_{q^{lcm(d) k}}, specializing equations incrementally and pruning subtrees
// whose equations have become nonzero constants.  Two exact shortcuts keep
// the walk tractable:
//   A. once every equation is identically satisfied, the remaining variables
//      are free and contribute a product of subfield sizes in closed form;
//   B. the last variable is never enumerated: the surviving equations reduce
//      to univariate polynomials G and the number of distinct roots inside
//      F_{q^s} is deg gcd(G, x^{q^s} - x), with x^{q^s} mod G computed by
//      iterated p-th powering of coefficients (characteristic-p linearity).
//
// count_partial_bruteforce is the independent oracle: literal nested loops
// over the same subfield spans with full polynomial evaluation at every leaf
// and no pruning of any kind.  Property tests pin the two against each other.
//
// The node budget counts work actually performed: one node per variable
// assignment tried, and one node per shortcut-B resolution.

#include <cstdint>
#include <functional>
#include <vector>

#include "pzeta/ffield.hpp"
#include "pzeta/poly.hpp"

namespace pzeta {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr std::uint64_t kOracleNodeBudget = 10'000'000;

struct Budget {
  std::uint64_t max_nodes = kDefaultNodeBudget;
  FieldLimits field;
};

struct CountStats {
  std::uint64_t nodes = 0;
};

// N_{d_1..d_n}(k, X).  d must have one entry per variable, all >= 1, k >= 1.
// modulus_rank selects an alternate ambient modulus (counts are invariant).
Int count_partial(const std::vector<Poly>& eqs,
                  const std::vector<std::uint32_t>& d, std::uint32_t k,
                  const Budget& budget = {}, CountStats* stats = nullptr,
                  std::uint32_t modulus_rank = 0);

// Literal nested-loop oracle; tighter default budget.
Int count_partial_bruteforce(const std::vector<Poly>& eqs,
                             const std::vector<std::uint32_t>& d,
                             std::uint32_t k,
                             const Budget& budget = {kOracleNodeBudget, {}},
                             CountStats* stats = nullptr,
                             std::uint32_t modulus_rank = 0);

// Classical N(k): every variable over F_{q^k}.
Int count_classical(const std::vector<Poly>& eqs, std::uint32_t k,
                    const Budget& budget = {}, CountStats* stats = nullptr);

// N_1..N_kmax with one cumulative budget across the whole series.
std::vector<Int> count_series(const std::vector<Poly>& eqs,
                              const std::vector<std::uint32_t>& d,
                              std::uint32_t kmax, const Budget& budget = {},
                              CountStats* stats = nullptr);

// Generalized partial count for a morphism f = (f_1..f_r): X -> A^r given by
// polynomials `maps`: counts x in X with f_j(x) in F_{q^{d_j k}}.  Points are
// enumerated over F_{q^{lcm(d) k}}, which is exhaustive whenever f is
// injective on points (Galois equivariance pins x once f(x) is fixed); the
// kernel verifies injectivity on the qualifying points it sees and throws
// InjectivityViolated on a collision.
Int count_generalized(const std::vector<Poly>& eqs,
                      const std::vector<Poly>& maps,
                      const std::vector<std::uint32_t>& d, std::uint32_t k,
                      const Budget& budget = {}, CountStats* stats = nullptr);

// Literal nested enumeration over per-variable spans (var_bases[i] spans the
// range of x_i); fn sees every assignment satisfying all equations.  Every
// variable assignment tried costs one node.
void for_each_solution(
    const std::vector<Poly>& eqs, const AmbientField& F,
    const std::vector<std::vector<FieldElement>>& var_bases,
    const Budget& budget, CountStats* stats,
    const std::function<void(const std::vector<FieldElement>&)>& fn);

// lcm of the d_i as a plain u64 (overflow-checked).
std::uint64_t lcm_of(const std::vector<std::uint32_t>& d);

}  // namespace pzeta
