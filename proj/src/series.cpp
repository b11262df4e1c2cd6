#include "pzeta/series.hpp"

#include <sstream>

namespace pzeta {

std::vector<Rat> zeta_series(const std::vector<Int>& counts) {
  std::size_t K = counts.size();
  std::vector<Rat> a(K + 1);
  a[0] = 1;
  for (std::size_t m = 1; m <= K; ++m) {
    Rat s = 0;
    for (std::size_t k = 1; k <= m; ++k) s += Rat(counts[k - 1]) * a[m - k];
    a[m] = s / Rat(static_cast<long>(m));
  }
  return a;
}

std::vector<Rat> log_derivative(const std::vector<Rat>& zeta) {
  if (zeta.empty() || zeta[0] != 1)
    fail(Err::NonUnitConstantTerm, "series must have constant term 1");
  std::size_t K = zeta.size() - 1;
  std::vector<Rat> n(K);
  for (std::size_t m = 1; m <= K; ++m) {
    Rat s = Rat(static_cast<long>(m)) * zeta[m];
    for (std::size_t k = 1; k < m; ++k) s -= n[k - 1] * zeta[m - k];
    n[m - 1] = s;
  }
  return n;
}

std::string series_to_string(const std::vector<Rat>& coeffs,
                             const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const Rat& c = coeffs[m];
    if (c == 0) continue;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = mag == 1;
    if (m == 0) {
      os << to_str(mag);
    } else {
      if (!unit) os << to_str(mag) << "*";
      os << var;
      if (m > 1) os << "^" << m;
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace pzeta
