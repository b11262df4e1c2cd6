#include "pzeta/cfinite.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pzeta {
namespace {

// Exact consistent solve of A x = b over the rationals (free variables set to
// zero); nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> A,
                                            std::vector<Rat> b) {
  std::size_t rows = A.size();
  std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && A[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(A[pr], A[r]);
    std::swap(b[pr], b[r]);
    Rat inv = Rat(1) / A[r][c];
    for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

double rat_to_double(const Rat& x) { return x.get_d(); }

std::complex<double> horner(const std::vector<double>& asc,
                            std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t i = asc.size(); i-- > 0;) acc = acc * z + asc[i];
  return acc;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::optional<Recurrence> min_recurrence(const std::vector<Int>& seq,
                                         std::uint32_t max_order) {
  if (max_order < 1) fail(Err::InvalidArgument, "max_order must be >= 1");
  if (seq.size() < 2 * static_cast<std::size_t>(max_order) + 2)
    fail(Err::InsufficientTerms,
         "need at least 2*max_order + 2 terms to certify a recurrence");
  std::size_t K = seq.size();
  for (std::uint32_t L = 1; L <= max_order; ++L) {
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (std::size_t i = L; i < K; ++i) {
      std::vector<Rat> row(L);
      for (std::uint32_t j = 1; j <= L; ++j) row[j - 1] = Rat(seq[i - j]);
      A.push_back(std::move(row));
      b.push_back(Rat(seq[i]));
    }
    auto sol = solve_exact(std::move(A), std::move(b));
    if (!sol) continue;
    Recurrence rec;
    rec.order = L;
    rec.coeffs = *sol;
    rec.char_poly.assign(L + 1, Rat(0));
    rec.char_poly[L] = 1;
    for (std::uint32_t j = 1; j <= L; ++j)
      rec.char_poly[L - j] = -rec.coeffs[j - 1];
    return rec;
  }
  return std::nullopt;
}

std::vector<Rat> expand_rational(const RationalFn& fn, std::uint32_t kmax) {
  if (fn.den.empty() || fn.den[0] != 1)
    fail(Err::NonUnitConstantTerm, "denominator must have constant term 1");
  std::vector<Rat> out(kmax + 1, Rat(0));
  for (std::uint32_t i = 0; i <= kmax; ++i) {
    Rat v = i < fn.num.size() ? fn.num[i] : Rat(0);
    for (std::size_t j = 1; j < fn.den.size() && j <= i; ++j)
      v -= fn.den[j] * out[i - j];
    out[i] = v;
  }
  return out;
}

std::optional<RationalFn> pade_reconstruct(const std::vector<Rat>& zcoeffs,
                                           std::uint32_t L, std::uint32_t M) {
  if (zcoeffs.empty() || zcoeffs[0] != 1)
    fail(Err::NonUnitConstantTerm, "series must have constant term 1");
  std::size_t K = zcoeffs.size() - 1;
  if (static_cast<std::size_t>(L) + M >= K)
    fail(Err::InsufficientTerms,
         "need surplus coefficients beyond order L+M to validate");
  auto a = [&](long i) { return i < 0 ? Rat(0) : zcoeffs[i]; };
  // linear system for q_1..q_M from orders L+1..L+M
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (std::uint32_t i = L + 1; i <= L + M; ++i) {
    std::vector<Rat> row(M);
    for (std::uint32_t j = 1; j <= M; ++j)
      row[j - 1] = a(static_cast<long>(i) - j);
    A.push_back(std::move(row));
    b.push_back(-a(i));
  }
  auto sol = solve_exact(std::move(A), std::move(b));
  if (!sol) return std::nullopt;
  RationalFn fn;
  fn.den.assign(M + 1, Rat(0));
  fn.den[0] = 1;
  for (std::uint32_t j = 1; j <= M; ++j) fn.den[j] = (*sol)[j - 1];
  fn.num.assign(L + 1, Rat(0));
  for (std::uint32_t i = 0; i <= L; ++i) {
    Rat v = 0;
    for (std::uint32_t j = 0; j <= M && j <= i; ++j)
      v += fn.den[j] * a(static_cast<long>(i) - j);
    fn.num[i] = v;
  }
  while (fn.num.size() > 1 && fn.num.back() == 0) fn.num.pop_back();
  while (fn.den.size() > 1 && fn.den.back() == 0) fn.den.pop_back();
  // out-of-sample validation against the whole supplied series
  std::vector<Rat> back = expand_rational(fn, static_cast<std::uint32_t>(K));
  for (std::size_t i = 0; i <= K; ++i)
    if (back[i] != zcoeffs[i]) return std::nullopt;
  return fn;
}

std::vector<RootInfo> char_roots(const Recurrence& r, double precision_target,
                                 double cluster_tol) {
  std::uint32_t L = r.order;
  if (L == 0 || r.char_poly.size() != L + 1 || r.char_poly[L] != 1)
    fail(Err::InvalidArgument, "characteristic polynomial must be monic");
  std::vector<double> p(L + 1);
  for (std::uint32_t i = 0; i <= L; ++i) p[i] = rat_to_double(r.char_poly[i]);
  std::vector<double> dp(L);
  for (std::uint32_t i = 1; i <= L; ++i) dp[i - 1] = i * p[i];

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(L, L);
  for (std::uint32_t i = 1; i < L; ++i) C(i, i - 1) = 1.0;
  for (std::uint32_t i = 0; i < L; ++i) C(i, L - 1) = -p[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  if (es.info() != Eigen::Success)
    fail(Err::ConvergenceFailure, "eigenvalue iteration did not converge");

  auto scale_at = [&](std::complex<double> z) {
    double az = std::abs(z);
    double s = 0, pw = 1;
    for (std::uint32_t i = 0; i <= L; ++i) {
      s += std::abs(p[i]) * pw;
      pw *= az;
    }
    return std::max(1.0, s);
  };

  std::vector<std::complex<double>> zs(L);
  for (std::uint32_t i = 0; i < L; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < 64; ++it) {
      std::complex<double> pv = horner(p, z);
      if (std::abs(pv) <= precision_target * scale_at(z)) break;
      std::complex<double> dv = horner(dp, z);
      if (std::abs(dv) == 0.0) break;
      z -= pv / dv;
    }
    if (std::abs(horner(p, z)) > precision_target * scale_at(z))
      fail(Err::ConvergenceFailure, "root residual above precision target");
    zs[i] = z;
  }

  // deterministic order before clustering
  std::sort(zs.begin(), zs.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  std::vector<RootInfo> out;
  for (const auto& z : zs) {
    bool merged = false;
    for (RootInfo& ri : out) {
      double tol = cluster_tol * std::max({1.0, std::abs(z),
                                           std::abs(ri.value)});
      if (std::abs(z - ri.value) <= tol) {
        // running centroid
        double m = ri.multiplicity;
        ri.value = (ri.value * m + z) / (m + 1.0);
        ri.multiplicity += 1;
        ri.clustered = true;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({z, 1, false});
  }
  return out;
}

SolvedCoefficients solve_coefficients(const std::vector<Int>& seq,
                                      const std::vector<RootInfo>& roots,
                                      double residual_tol,
                                      double condition_cap) {
  std::size_t K = seq.size();
  std::size_t cols = 0;
  for (const RootInfo& r : roots) cols += r.multiplicity;
  if (cols == 0) fail(Err::InvalidArgument, "no roots supplied");
  if (K < cols)
    fail(Err::InsufficientTerms, "fewer terms than unknown coefficients");
  Eigen::MatrixXcd A(K, cols);
  Eigen::VectorXcd b(K);
  double bmax = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    double nk = mpz_get_d(seq[k - 1].get_mpz_t());
    b(k - 1) = nk;
    bmax = std::max(bmax, std::abs(nk));
    std::size_t col = 0;
    for (const RootInfo& r : roots) {
      std::complex<double> g = std::pow(r.value, static_cast<double>(k));
      double kt = 1.0;
      for (std::uint32_t t = 0; t < r.multiplicity; ++t) {
        A(k - 1, col++) = kt * g;
        kt *= static_cast<double>(k);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  SolvedCoefficients out;
  out.condition = smin > 0 ? smax / smin
                           : std::numeric_limits<double>::infinity();
  if (!(out.condition <= condition_cap))
    fail(Err::IllConditioned, "coefficient system condition estimate too large");
  Eigen::VectorXcd c = svd.solve(b);
  Eigen::VectorXcd resid = A * c - b;
  double rmax = 0;
  for (Eigen::Index i = 0; i < resid.size(); ++i)
    rmax = std::max(rmax, std::abs(resid(i)));
  out.residual = rmax / bmax;
  if (out.residual > residual_tol)
    fail(Err::ResidualTooLarge, "coefficient fit residual above tolerance");
  out.c.assign(c.data(), c.data() + c.size());
  return out;
}

std::vector<RhVerdict> rh_check(const std::vector<RootInfo>& roots,
                                const Int& q, double rel_tol) {
  if (q < 2) fail(Err::InvalidArgument, "q must be >= 2");
  double qd = mpz_get_d(q.get_mpz_t());
  std::vector<RhVerdict> out;
  for (const RootInfo& r : roots) {
    RhVerdict v;
    v.abs_value = std::abs(r.value);
    if (v.abs_value > 0 && std::isfinite(v.abs_value)) {
      long w = std::lround(2.0 * std::log(v.abs_value) / std::log(qd));
      double target = std::pow(qd, w / 2.0);
      v.weight = w;
      v.pass = w >= 0 && std::abs(v.abs_value - target) <= rel_tol * target;
    }
    out.push_back(v);
  }
  return out;
}

ClassifyResult classify(const std::vector<std::complex<double>>& c,
                        std::uint32_t d, double tol, long coeff_cap) {
  if (d < 1) fail(Err::InvalidArgument, "d must be >= 1");
  ClassifyResult res;
  // integers first: Rational subsumes NearRational
  bool all_int = true;
  std::vector<std::vector<long>> int_wit;
  for (const auto& z : c) {
    long n = std::lround(z.real());
    if (std::abs(z.imag()) <= tol && std::abs(z.real() - n) <= tol) {
      int_wit.push_back({n});
    } else {
      all_int = false;
      break;
    }
  }
  if (all_int) {
    res.verdict = RatClass::Rational;
    res.witnesses = std::move(int_wit);
    return res;
  }
  std::uint32_t phi = euler_phi(d);
  Eigen::MatrixXd B(2, phi);
  for (std::uint32_t t = 0; t < phi; ++t) {
    double ang = 2.0 * M_PI * t / d;
    B(0, t) = std::cos(ang);
    B(1, t) = std::sin(ang);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B);
  std::vector<std::vector<long>> wit;
  for (const auto& z : c) {
    Eigen::Vector2d rhs(z.real(), z.imag());
    Eigen::VectorXd x = cod.solve(rhs);  // minimal-norm coordinates
    std::vector<long> a(phi);
    std::complex<double> rec = 0;
    bool capped = false;
    for (std::uint32_t t = 0; t < phi; ++t) {
      a[t] = std::lround(x(t));
      if (std::abs(a[t]) > coeff_cap) capped = true;
      double ang = 2.0 * M_PI * t / d;
      rec += std::complex<double>(std::cos(ang), std::sin(ang)) *
             static_cast<double>(a[t]);
    }
    if (capped || std::abs(z - rec) > tol) return res;  // Inconclusive
    wit.push_back(std::move(a));
  }
  res.verdict = RatClass::NearRational;
  res.witnesses = std::move(wit);
  return res;
}

Int predict(const Recurrence& r, const std::vector<Int>& seq,
            std::uint32_t k) {
  std::size_t K = seq.size();
  if (k <= K) fail(Err::InvalidArgument, "k must exceed the supplied terms");
  std::uint32_t L = r.order;
  if (K < L) fail(Err::InsufficientTerms, "sequence shorter than the order");
  std::vector<Rat> window(L);
  for (std::uint32_t j = 0; j < L; ++j) window[j] = Rat(seq[K - L + j]);
  Rat value = 0;
  for (std::size_t m = K + 1; m <= k; ++m) {
    Rat next = 0;
    for (std::uint32_t j = 1; j <= L; ++j)
      next += r.coeffs[j - 1] * window[L - j];
    value = next;
    if (L > 0) {
      window.erase(window.begin());
      window.push_back(next);
    }
  }
  if (value.get_den() != 1)
    fail(Err::NonIntegerPrediction,
         "extrapolated count is not an integer; the recurrence is wrong");
  return Int(value.get_num());
}

}  // namespace pzeta
