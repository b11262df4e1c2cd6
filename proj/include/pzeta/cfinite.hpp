#pragma once
// Sequence-level machinery for the rationality theorems: exact minimal
// recurrence detection, Pade reconstruction of the zeta function, root
// extraction, Riemann-hypothesis weight checks, cyclotomic-coefficient
// classification, and exact extrapolation.
//
// Detection is exact rational arithmetic; only root finding and coefficient
// solving float, under explicit tolerances.

#include <complex>
#include <optional>
#include <vector>

#include "pzeta/errors.hpp"
#include "pzeta/rat.hpp"

namespace pzeta {

struct Recurrence {
  std::uint32_t order = 0;
  std::vector<Rat> coeffs;     // c_1..c_L:  N_k = c_1 N_{k-1} + .. + c_L N_{k-L}
  std::vector<Rat> char_poly;  // monic, ascending: x^L - c_1 x^{L-1} - .. - c_L
};

// Minimal-order recurrence fitting every supplied term, or nullopt if no
// order <= max_order does.  Requires seq.size() >= 2*max_order + 2 so that a
// found recurrence is validated on at least order+2 out-of-sample terms.
std::optional<Recurrence> min_recurrence(const std::vector<Int>& seq,
                                         std::uint32_t max_order);

struct RationalFn {
  std::vector<Rat> num;  // ascending, num[0] = 1
  std::vector<Rat> den;  // ascending, den[0] = 1
};

// Pade reconstruction P/Q of a series with a_0 = 1: deg P <= L, deg Q <= M,
// agreement through order L+M, then validated against every surplus
// coefficient.  Requires L+M < zcoeffs.size()-1 (at least one surplus term).
std::optional<RationalFn> pade_reconstruct(const std::vector<Rat>& zcoeffs,
                                           std::uint32_t L, std::uint32_t M);

// a_0..a_kmax of num/den (den[0] must be 1); exact.
std::vector<Rat> expand_rational(const RationalFn& fn, std::uint32_t kmax);

struct RootInfo {
  std::complex<double> value;
  std::uint32_t multiplicity = 1;
  bool clustered = false;  // merged from nearby eigenvalues
};

// Roots of the characteristic polynomial: companion-matrix eigenvalues,
// Newton-polished until |p(z)| <= precision_target * scale(z), then merged
// when closer than cluster_tol * max(1, |z|).  A multiplicity-m root is only
// located to (precision_target * scale)^(1/m), so the merge radius has to sit
// above that (~1e-5 for m = 2); distinct integer-polynomial roots in this
// domain are separated by far more, and a wrong merge is caught downstream
// by solve_coefficients.
std::vector<RootInfo> char_roots(const Recurrence& r,
                                 double precision_target = 1e-12,
                                 double cluster_tol = 1e-5);

struct SolvedCoefficients {
  std::vector<std::complex<double>> c;  // (root, power-of-k) order, flattened
  double residual = 0.0;                // max relative error over the terms
  double condition = 0.0;               // SVD condition estimate
};

// Least-squares solve of N_k = sum_j sum_{t<mult_j} c_{jt} k^t gamma_j^k over
// k = 1..K (confluent Vandermonde).  IllConditioned above condition_cap,
// ResidualTooLarge above residual_tol.
SolvedCoefficients solve_coefficients(const std::vector<Int>& seq,
                                      const std::vector<RootInfo>& roots,
                                      double residual_tol = 1e-6,
                                      double condition_cap = 1e12);

struct RhVerdict {
  bool pass = false;
  long weight = 0;       // w with |gamma| = q^{w/2}, when pass
  double abs_value = 0.0;
};

// Weight check |gamma| = q^{w/2} with w a nonnegative integer, per root.
std::vector<RhVerdict> rh_check(const std::vector<RootInfo>& roots,
                                const Int& q, double rel_tol = 1e-6);

enum class RatClass { Rational, NearRational, Inconclusive };

inline const char* rat_class_name(RatClass c) {
  switch (c) {
    case RatClass::Rational: return "Rational";
    case RatClass::NearRational: return "NearRational";
    case RatClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ClassifyResult {
  RatClass verdict = RatClass::Inconclusive;
  // per coefficient: integer coordinates; for Rational a single integer, for
  // NearRational coordinates in the basis {zeta_d^t : 0 <= t < phi(d)}
  std::vector<std::vector<long>> witnesses;
};

// Rational iff every c_j is within tol of a rational integer; NearRational
// iff every c_j rounds (coordinates bounded by coeff_cap) onto an element of
// Z[zeta_d]; otherwise Inconclusive.
ClassifyResult classify(const std::vector<std::complex<double>>& c,
                        std::uint32_t d, double tol = 1e-6,
                        long coeff_cap = 64);

// Exact extrapolation of seq (N_1..N_K) to index k > K; the result must be an
// integer (NonIntegerPrediction otherwise -- a non-integer extrapolated count
// always means the recurrence is wrong).
Int predict(const Recurrence& r, const std::vector<Int>& seq, std::uint32_t k);

}  // namespace pzeta
