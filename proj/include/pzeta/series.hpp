#pragma once
// Exact power-series layer between counts and the zeta function.

#include <string>
#include <vector>

#include "pzeta/errors.hpp"
#include "pzeta/rat.hpp"

namespace pzeta {

// Coefficients a_0..a_K of exp(sum_{k>=1} N_k T^k / k) from counts N_1..N_K,
// via the differential recurrence m a_m = sum_{k=1}^m N_k a_{m-k}.  Always a
// vector of length counts.size() + 1 with a_0 = 1; exact rationals.
std::vector<Rat> zeta_series(const std::vector<Int>& counts);

// T Z'/Z of a series with constant term 1: recovers N_1..N_K exactly.
std::vector<Rat> log_derivative(const std::vector<Rat>& zeta);

// "1 + 6*T + 28*T^2" (zero terms skipped, unit coefficients elided)
std::string series_to_string(const std::vector<Rat>& coeffs,
                             const std::string& var = "T");

}  // namespace pzeta
