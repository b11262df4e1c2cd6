#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pzeta/symident.hpp"

using namespace pzeta;

namespace {

// exact integer matrix power-trace oracle
std::vector<std::vector<Int>> matmul(const std::vector<std::vector<Int>>& a,
                                     const std::vector<std::vector<Int>>& b) {
  std::size_t n = a.size();
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Int trace(const std::vector<std::vector<Int>>& a) {
  Int t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

}  // namespace

TEST_CASE("Newton recurrences on known spectra") {
  // single eigenvalue 2
  std::vector<Rat> p = {Rat(2), Rat(4), Rat(8)};
  std::vector<Rat> h = power_to_complete(p);
  CHECK(h == std::vector<Rat>{Rat(2), Rat(4), Rat(8)});
  std::vector<Rat> e = power_to_elementary(p);
  CHECK(e == std::vector<Rat>{Rat(2), Rat(0), Rat(0)});

  // eigenvalues {1, 2}
  std::vector<Rat> p2 = {Rat(3), Rat(5)};
  CHECK(power_to_complete(p2) == std::vector<Rat>{Rat(3), Rat(7)});
  CHECK(power_to_elementary(p2) == std::vector<Rat>{Rat(3), Rat(2)});

  // zero power sums
  std::vector<Rat> z(4, Rat(0));
  for (const Rat& v : power_to_complete(z)) CHECK(v == 0);
  for (const Rat& v : power_to_elementary(z)) CHECK(v == 0);
}

TEST_CASE("round trips and duality") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> p;
    for (int i = 0; i < 5; ++i) {
      Rat v(num(rng), 1 + (trial % 3));
      v.canonicalize();
      p.push_back(v);
    }
    std::vector<Rat> h = power_to_complete(p);
    std::vector<Rat> e = power_to_elementary(p);
    CHECK(complete_to_power(h) == p);
    CHECK(elementary_to_power(e) == p);
    // H(T) E(-T) = 1: sum_{s=0}^{t} (-1)^s e_s h_{t-s} = 0 for t >= 1
    std::vector<Rat> he = {Rat(1)};
    he.insert(he.end(), h.begin(), h.end());
    std::vector<Rat> ee = {Rat(1)};
    ee.insert(ee.end(), e.begin(), e.end());
    for (std::size_t t = 1; t <= p.size(); ++t) {
      Rat acc = 0;
      for (std::size_t s = 0; s <= t; ++s) {
        Rat sg = (s % 2) ? Rat(-1) : Rat(1);
        acc += sg * ee[s] * he[t - s];
      }
      CHECK(acc == 0);
    }
  }
}

TEST_CASE("universal trace closes the top power sum") {
  // dim 1, eigenvalue 3, h = 2
  CHECK(universal_trace({Rat(3)}) == 9);
  CHECK(universal_trace_alt_sign({Rat(3)}) == -9);

  // h = 1: dimension bound forces the zero space
  CHECK(universal_trace({}) == 0);

  // random integer spectra with dim <= h-1
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> ev(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t h = 2 + trial % 5;  // h in 2..6
    std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng() % (h - 1));
    std::vector<Rat> lam;
    for (std::uint32_t i = 0; i < dim; ++i) lam.push_back(Rat(ev(rng)));
    std::vector<Rat> p = spectrum_power_sums(lam, h);
    std::vector<Rat> lower(p.begin(), p.end() - 1);
    CHECK(universal_trace(lower) == p[h - 1]);
    // the printed sign differs by the global factor (-1)^{h-1}
    Rat flip = (h % 2) ? Rat(1) : Rat(-1);
    CHECK(universal_trace_alt_sign(lower) == flip * p[h - 1]);
  }

  // random integer matrices, dim <= h-1, trace oracle by repeated powering
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t h = 2 + trial % 4;  // 2..5
    std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng() % (h - 1));
    std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    std::vector<Rat> lower;
    auto pw = m;
    for (std::uint32_t i = 1; i < h; ++i) {
      lower.push_back(Rat(trace(pw)));
      pw = matmul(pw, m);
    }
    CHECK(universal_trace(lower) == Rat(trace(pw)));
  }

  // zero matrix, any h: all traces zero
  CHECK(universal_trace({Rat(0), Rat(0), Rat(0)}) == 0);
}

TEST_CASE("spectrum_power_sums") {
  std::vector<Rat> p = spectrum_power_sums({Rat(1), Rat(2)}, 3);
  CHECK(p == std::vector<Rat>{Rat(3), Rat(5), Rat(9)});
  CHECK(spectrum_power_sums({}, 3) == std::vector<Rat>(3, Rat(0)));
}
