#pragma once
// Faltings' product construction: the variety Y(d_1..d_n, X) inside X^L,
// L = lcm(d), carrying the cyclic shift sigma.  Points of Y are L-tuples of
// X-points whose coordinate grid satisfies y_{i,j} = y_{i,j+d_i (mod L)};
// fixed points of sigma o Frob^k on Y biject with the partial count
// N_{d_1..d_n}(k, X).  The enumeration here deliberately walks full tuples
// (with early grid pruning) instead of reusing the counting kernel, so it
// serves as an independent oracle for count_partial.

#include "pzeta/counting.hpp"

namespace pzeta {

// One point of Y: comps[j][i] is coordinate i of the j-th component point,
// all in a common ambient field.
struct TwistedPoint {
  std::vector<std::vector<FieldElement>> comps;
};

// sigma(y_1, .., y_L) = (y_L, y_1, .., y_{L-1})
TwistedPoint sigma(const TwistedPoint& y);

// The grid identification y_{i,j} = y_{i,j+d_i (mod L)}, indices reduced to
// the smallest positive residue.
bool grid_holds(const TwistedPoint& y, const std::vector<std::uint32_t>& d);

// #{y in Y(d, X) : sigma(Frob^k(y)) = y}.  Enumerates tuples of points of
// X(F_{q^{k lcm(d)}}) satisfying the grid, then filters by the twisted
// fixed-point condition Frob^k(y_j) = y_{j+1} (cyclically).  One node per
// component candidate tried, on top of the X-point enumeration's nodes.
Int fixed_points_sigma_frob(const std::vector<Poly>& eqs,
                            const std::vector<std::uint32_t>& d,
                            std::uint32_t k, const Budget& budget = {},
                            CountStats* stats = nullptr);

struct YMembershipReport {
  std::uint64_t y_points = 0;      // grid-satisfying tuples over the ambient
  std::uint64_t fixed_points = 0;  // of those, fixed by sigma o Frob^k
  bool sigma_stable = false;       // sigma maps every Y-point to a Y-point
  bool first_components_in_subfields = false;  // y_1 coord i in F_{q^{d_i k}}
  bool first_components_distinct = false;      // fixed points biject with y_1
};

// Enumerates all of Y over the ambient field and checks the structural claims
// (sigma-stability, subfield membership of fixed-point first components, and
// the y_1 bijection).
YMembershipReport verify_y_membership(const std::vector<Poly>& eqs,
                                      const std::vector<std::uint32_t>& d,
                                      std::uint32_t k,
                                      const Budget& budget = {},
                                      CountStats* stats = nullptr);

}  // namespace pzeta
