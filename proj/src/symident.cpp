#include "pzeta/symident.hpp"

namespace pzeta {
namespace {

Rat sign(int s) { return (s & 1) ? Rat(-1) : Rat(1); }

}  // namespace

std::vector<Rat> power_to_complete(const std::vector<Rat>& p) {
  std::size_t n = p.size();
  std::vector<Rat> h(n + 1);
  h[0] = 1;
  for (std::size_t s = 1; s <= n; ++s) {
    Rat acc = 0;
    for (std::size_t i = 1; i <= s; ++i) acc += h[s - i] * p[i - 1];
    h[s] = acc / Rat(static_cast<long>(s));
  }
  return {h.begin() + 1, h.end()};
}

std::vector<Rat> power_to_elementary(const std::vector<Rat>& p) {
  std::size_t n = p.size();
  std::vector<Rat> e(n + 1);
  e[0] = 1;
  for (std::size_t s = 1; s <= n; ++s) {
    Rat acc = 0;
    for (std::size_t i = 1; i <= s; ++i)
      acc += sign(static_cast<int>(i) - 1) * e[s - i] * p[i - 1];
    e[s] = acc / Rat(static_cast<long>(s));
  }
  return {e.begin() + 1, e.end()};
}

std::vector<Rat> complete_to_power(const std::vector<Rat>& h) {
  std::size_t n = h.size();
  std::vector<Rat> p(n);
  std::vector<Rat> hh(n + 1);
  hh[0] = 1;
  for (std::size_t i = 0; i < n; ++i) hh[i + 1] = h[i];
  for (std::size_t s = 1; s <= n; ++s) {
    Rat acc = Rat(static_cast<long>(s)) * hh[s];
    for (std::size_t i = 1; i < s; ++i) acc -= hh[s - i] * p[i - 1];
    p[s - 1] = acc;
  }
  return p;
}

std::vector<Rat> elementary_to_power(const std::vector<Rat>& e) {
  std::size_t n = e.size();
  std::vector<Rat> p(n);
  std::vector<Rat> ee(n + 1);
  ee[0] = 1;
  for (std::size_t i = 0; i < n; ++i) ee[i + 1] = e[i];
  for (std::size_t s = 1; s <= n; ++s) {
    Rat acc = Rat(static_cast<long>(s)) * ee[s];
    for (std::size_t i = 1; i < s; ++i)
      acc -= sign(static_cast<int>(i) - 1) * ee[s - i] * p[i - 1];
    p[s - 1] = sign(static_cast<int>(s) - 1) * acc;
  }
  return p;
}

namespace {

// shared core: h_1..h_h and e_1..e_h with the degree-h pieces closed by the
// dimension bound (e_h = 0, h_h from the duality H(T) E(-T) = 1)
void closed_symmetric(const std::vector<Rat>& lower, std::vector<Rat>& h,
                      std::vector<Rat>& e) {
  std::size_t hh = lower.size() + 1;
  std::vector<Rat> hs = power_to_complete(lower);
  std::vector<Rat> es = power_to_elementary(lower);
  h.assign(hh + 1, Rat(0));
  e.assign(hh + 1, Rat(0));
  h[0] = 1;
  e[0] = 1;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    h[i + 1] = hs[i];
    e[i + 1] = es[i];
  }
  e[hh] = 0;
  Rat top = 0;
  for (std::size_t s = 1; s < hh; ++s)
    top += sign(static_cast<int>(s) - 1) * e[s] * h[hh - s];
  h[hh] = top;
}

}  // namespace

Rat universal_trace(const std::vector<Rat>& lower) {
  std::size_t hh = lower.size() + 1;
  std::vector<Rat> h, e;
  closed_symmetric(lower, h, e);
  Rat acc = 0;
  for (std::size_t s = 1; s <= hh; ++s)
    acc += sign(static_cast<int>(hh - s)) * Rat(static_cast<long>(s)) * h[s] *
           e[hh - s];
  return acc;
}

Rat universal_trace_alt_sign(const std::vector<Rat>& lower) {
  std::size_t hh = lower.size() + 1;
  std::vector<Rat> h, e;
  closed_symmetric(lower, h, e);
  Rat acc = 0;
  for (std::size_t s = 1; s <= hh; ++s)
    acc += sign(static_cast<int>(s) - 1) * Rat(static_cast<long>(s)) * h[s] *
           e[hh - s];
  return acc;
}

std::vector<Rat> spectrum_power_sums(const std::vector<Rat>& eigenvalues,
                                     std::uint32_t hmax) {
  std::vector<Rat> p(hmax, Rat(0));
  for (const Rat& lam : eigenvalues) {
    Rat pw = 1;
    for (std::uint32_t k = 0; k < hmax; ++k) {
      pw *= lam;
      p[k] += pw;
    }
  }
  return p;
}

}  // namespace pzeta
