#pragma once
// Newton's identities between power sums and elementary / complete
// homogeneous symmetric functions, and the universal trace formula that
// closes Tr(phi^h) from the lower traces when dim V <= h-1.

#include <vector>

#include "pzeta/errors.hpp"
#include "pzeta/rat.hpp"

namespace pzeta {

// h_1..h_h from p_1..p_h:  s h_s = sum_{i=1}^{s} h_{s-i} p_i
std::vector<Rat> power_to_complete(const std::vector<Rat>& p);

// e_1..e_h from p_1..p_h:  s e_s = sum_{i=1}^{s} (-1)^{i-1} e_{s-i} p_i
std::vector<Rat> power_to_elementary(const std::vector<Rat>& p);

// inverse recurrences (round-trip checks)
std::vector<Rat> complete_to_power(const std::vector<Rat>& h);
std::vector<Rat> elementary_to_power(const std::vector<Rat>& e);

// Tr(phi^h) from lower = (p_1..p_{h-1}), valid when dim V <= h-1:
//   p_h = sum_{s=1}^{h} (-1)^{h-s} s h_s e_{h-s}
// where e_h = 0 (dimension bound) and h_h is closed by the duality
// sum_{s=0}^{h} (-1)^s e_s h_{h-s} = 0.  The sign (-1)^{h-s} comes from
// P(T) = T H'(T) E(-T); see universal_trace_alt_sign for the printed
// variant, which differs by the global factor (-1)^{h-1}.
Rat universal_trace(const std::vector<Rat>& lower);

// Same data, sign (-1)^{s-1} per summand.
Rat universal_trace_alt_sign(const std::vector<Rat>& lower);

// p_1..p_hmax of an explicit spectrum (oracle helper)
std::vector<Rat> spectrum_power_sums(const std::vector<Rat>& eigenvalues,
                                     std::uint32_t hmax);

}  // namespace pzeta
