#include "pzeta/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <optional>

namespace pzeta {

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on integers; a must be nonzero mod p
  std::int64_t t = 0, newt = 1;
  std::int64_t r = p, newr = static_cast<std::int64_t>(a % p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail(Err::InvalidArgument, "no inverse mod p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void fp_trim(FpVec& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpVec fp_mul(const FpVec& a, const FpVec& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    std::uint64_t ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + ai * b[j]) % p);
  }
  return r;
}

// remainder of a modulo g (g nonzero), in place
void fp_mod_inplace(FpVec& a, const FpVec& g, std::uint32_t p) {
  int dg = fp_degree(g);
  std::uint32_t linv = fp_inv(g[dg], p);
  for (int i = static_cast<int>(a.size()) - 1; i >= dg; --i) {
    std::uint64_t c = a[i];
    if (!c) continue;
    std::uint64_t f = c * linv % p;
    for (int j = 0; j <= dg; ++j) {
      std::uint64_t sub = f * g[j] % p;
      a[i - dg + j] =
          static_cast<std::uint32_t>((a[i - dg + j] + p - sub) % p);
    }
  }
  if (static_cast<int>(a.size()) > dg) a.resize(dg);
  fp_trim(a);
}

// quotient and remainder of a / b
void fp_divmod(const FpVec& a, const FpVec& b, std::uint32_t p, FpVec& q,
               FpVec& rem) {
  int db = fp_degree(b);
  rem = a;
  fp_trim(rem);
  int da = fp_degree(rem);
  if (da < db) {
    q.clear();
    return;
  }
  q.assign(da - db + 1, 0);
  std::uint32_t linv = fp_inv(b[db], p);
  for (int i = da; i >= db; --i) {
    std::uint64_t c = i < static_cast<int>(rem.size()) ? rem[i] : 0;
    if (!c) continue;
    std::uint64_t f = c * linv % p;
    q[i - db] = static_cast<std::uint32_t>(f);
    for (int j = 0; j <= db; ++j) {
      std::uint64_t sub = f * b[j] % p;
      rem[i - db + j] =
          static_cast<std::uint32_t>((rem[i - db + j] + p - sub) % p);
    }
  }
  fp_trim(rem);
}

FpVec fp_gcd(FpVec a, FpVec b, std::uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    fp_mod_inplace(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    std::uint32_t linv = fp_inv(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(std::uint64_t(c) * linv % p);
  }
  return a;
}

namespace {

FpVec fp_mulmod(const FpVec& a, const FpVec& b, const FpVec& g,
                std::uint32_t p) {
  FpVec r = fp_mul(a, b, p);
  fp_mod_inplace(r, g, p);
  return r;
}

// base^e mod g with a plain u64 exponent (enough for e <= p)
FpVec fp_powmod_u(const FpVec& base, std::uint64_t e, const FpVec& g,
                  std::uint32_t p) {
  FpVec result{1};
  FpVec b = base;
  fp_mod_inplace(b, g, p);
  while (e) {
    if (e & 1) result = fp_mulmod(result, b, g, p);
    e >>= 1;
    if (e) b = fp_mulmod(b, b, g, p);
  }
  return result;
}

std::vector<std::uint32_t> distinct_prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool code_less(const std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b) {
  // ascending order of sum_i c_i p^i: compare high digits first
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

FpLinearMap matmul(const FpLinearMap& A, const FpLinearMap& B) {
  const std::uint32_t n = A.n, p = A.p;
  FpLinearMap R{n, p, std::vector<std::uint32_t>(std::size_t(n) * n, 0)};
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t k = 0; k < n; ++k) {
      std::uint64_t aik = A.a[std::size_t(i) * n + k];
      if (!aik) continue;
      const std::uint32_t* brow = B.a.data() + std::size_t(k) * n;
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t v = R.a[std::size_t(i) * n + j] + aik * brow[j] % p;
        R.a[std::size_t(i) * n + j] = static_cast<std::uint32_t>(v % p);
      }
    }
  return R;
}

FpLinearMap identity_map(std::uint32_t n, std::uint32_t p) {
  FpLinearMap R{n, p, std::vector<std::uint32_t>(std::size_t(n) * n, 0)};
  for (std::uint32_t i = 0; i < n; ++i) R.a[std::size_t(i) * n + i] = 1;
  return R;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

int fp_degree(const FpVec& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

bool is_irreducible(const FpVec& f_in, std::uint32_t p) {
  FpVec f = f_in;
  for (auto& c : f) c %= p;
  fp_trim(f);
  int n = fp_degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  std::uint32_t linv = fp_inv(f[n], p);
  for (auto& c : f) c = static_cast<std::uint32_t>(std::uint64_t(c) * linv % p);

  // checkpoints where x^{p^j} is inspected: j = n (full period) and j = n/l
  std::vector<std::uint32_t> checks;
  for (std::uint32_t l : distinct_prime_factors(static_cast<std::uint32_t>(n)))
    checks.push_back(static_cast<std::uint32_t>(n) / l);

  FpVec x{0, 1};
  FpVec cur = x;  // x^{p^0}
  for (std::uint32_t j = 1; j <= static_cast<std::uint32_t>(n); ++j) {
    cur = fp_powmod_u(cur, p, f, p);
    bool is_check =
        std::find(checks.begin(), checks.end(), j) != checks.end();
    if (is_check) {
      // gcd(x^{p^{n/l}} - x, f) must be trivial
      FpVec diff = cur;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
      fp_trim(diff);
      FpVec g = fp_gcd(diff, f, p);
      if (fp_degree(g) != 0) return false;
    }
  }
  FpVec fin = cur;
  fp_trim(fin);
  return fin == x;  // x^{p^n} == x
}

FpVec smallest_irreducible(std::uint32_t p, std::uint32_t deg,
                           std::uint32_t rank) {
  if (deg == 0) fail(Err::InvalidArgument, "degree must be positive");
  if (!is_prime_u32(p)) fail(Err::NotPrime, "p is not prime");
  FpVec cand(deg + 1, 0);
  cand[deg] = 1;
  const std::uint64_t kMaxAttempts = 10'000'000;
  std::uint64_t attempts = 0;
  for (;;) {
    if (++attempts > kMaxAttempts)
      fail(Err::BudgetExceeded, "irreducible search exceeded attempt cap");
    if (is_irreducible(cand, p)) {
      if (rank == 0) return cand;
      --rank;
    }
    // next candidate in ascending code order
    std::uint32_t j = 0;
    while (j < deg && cand[j] == p - 1) cand[j++] = 0;
    if (j == deg)
      fail(Err::InvalidArgument,
           "fewer irreducibles of this degree than requested rank");
    ++cand[j];
  }
}

FieldSpec make_field_spec(std::uint32_t p, std::uint32_t e) {
  if (p >= AmbientField::kMaxP) fail(Err::InvalidArgument, "p too large");
  if (!is_prime_u32(p)) fail(Err::NotPrime, "p is not prime");
  if (e < 1 || e > AmbientField::kMaxDeg)
    fail(Err::InvalidArgument, "extension degree out of range");
  return FieldSpec{p, e, smallest_irreducible(p, e)};
}

std::size_t fe_hash(const FieldElement& a) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t w : a.c) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void FpLinearMap::apply(const std::uint32_t* in, std::uint32_t* out) const {
  std::uint32_t tmp[AmbientField::kMaxDeg];
  std::copy(in, in + n, tmp);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    const std::uint32_t* row = a.data() + std::size_t(i) * n;
    for (std::uint32_t j = 0; j < n; ++j) acc += std::uint64_t(row[j]) * tmp[j];
    out[i] = static_cast<std::uint32_t>(acc % p);
  }
}

AmbientField::AmbientField(const FieldSpec& spec, std::uint32_t m,
                           const FieldLimits& lim, std::uint32_t modulus_rank)
    : spec_(spec), m_(m) {
  const std::uint32_t p = spec_.p;
  if (p >= kMaxP) fail(Err::InvalidArgument, "p too large");
  if (!is_prime_u32(p)) fail(Err::NotPrime, "p is not prime");
  if (spec_.e < 1 || m_ < 1)
    fail(Err::InvalidArgument, "degrees must be positive");

  FpVec bm = spec_.base_modulus;
  fp_trim(bm);
  for (auto c : bm)
    if (c >= p) fail(Err::InvalidArgument, "base modulus coefficient out of range");
  if (fp_degree(bm) != static_cast<int>(spec_.e) || bm.back() != 1)
    fail(Err::InvalidArgument, "base modulus must be monic of degree e");
  if (!is_irreducible(bm, p))
    fail(Err::InvalidArgument, "base modulus is not irreducible");
  spec_.base_modulus = bm;

  std::uint64_t n64 = std::uint64_t(spec_.e) * m_;
  if (n64 > kMaxDeg) fail(Err::BudgetExceeded, "ambient degree too large");
  n_ = static_cast<std::uint32_t>(n64);
  if (double(n_) * std::log2(double(p)) > lim.max_log2_size)
    fail(Err::BudgetExceeded, "ambient field exceeds configured size limit");

  mod_ = smallest_irreducible(p, n_, modulus_rank);

  // reduction rows: red_[i] = x^{n+i} mod F, i in [0, n-1)
  if (n_ > 1) {
    red_.assign(std::size_t(n_ - 1) * n_, 0);
    std::uint32_t* row0 = red_.data();
    for (std::uint32_t j = 0; j < n_; ++j) row0[j] = (p - mod_[j] % p) % p;
    for (std::uint32_t i = 1; i + 1 <= n_ - 1; ++i) {
      const std::uint32_t* prev = red_.data() + std::size_t(i - 1) * n_;
      std::uint32_t* row = red_.data() + std::size_t(i) * n_;
      std::uint64_t t = prev[n_ - 1];
      for (std::uint32_t j = 0; j < n_; ++j) {
        std::uint64_t v = (j ? prev[j - 1] : 0) + t * row0[j] % p;
        row[j] = static_cast<std::uint32_t>(v % p);
      }
    }
  }

  // p-power Frobenius matrix: column i holds x^{i p} mod F
  frobp_.n = n_;
  frobp_.p = p;
  frobp_.a.assign(std::size_t(n_) * n_, 0);
  FpVec xp = fp_powmod_u(FpVec{0, 1}, p, mod_, p);
  xp.resize(n_, 0);
  FpVec t(n_, 0);
  t[0] = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) frobp_.a[std::size_t(j) * n_ + i] = t[j];
    if (i + 1 < n_) {
      t = fp_mulmod(t, xp, mod_, p);
      t.resize(n_, 0);
    }
  }

  // canonical generator of F_q inside this field: scan the q-element
  // subfield for roots of base_modulus and keep the smallest by code order
  if (spec_.e == 1) {
    base_root_ = zero();
  } else {
    if (double(spec_.e) * std::log2(double(p)) > 22.0)
      fail(Err::BudgetExceeded, "base field too large for generator scan");
    auto basis = subfield_basis(1);
    SpanEnumerator en(*this, basis);
    std::optional<FieldElement> best;
    const FpVec& bmc = spec_.base_modulus;
    FpVec acc(n_), tmp(n_);
    do {
      const std::uint32_t* a = en.current();
      // Horner evaluation of base_modulus at a
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t i = bmc.size(); i-- > 0;) {
        mul_span(acc.data(), a, tmp.data());
        std::copy(tmp.begin(), tmp.end(), acc.begin());
        acc[0] = static_cast<std::uint32_t>((acc[0] + bmc[i]) % p);
      }
      if (is_zero_span(acc.data())) {
        FieldElement cand = en.current_element();
        if (!best || code_less(cand.c, best->c)) best = cand;
      }
    } while (en.advance());
    if (!best)
      fail(Err::InvalidArgument, "base modulus has no root in its subfield");
    base_root_ = *best;
  }
}

Int AmbientField::subfield_size(std::uint32_t s) const {
  std::uint64_t g = std::gcd(std::uint64_t(spec_.e) * s, std::uint64_t(n_));
  return ipow(spec_.p, g);
}

FieldElement AmbientField::zero() const {
  return FieldElement{std::vector<std::uint32_t>(n_, 0)};
}

FieldElement AmbientField::one() const {
  FieldElement r{std::vector<std::uint32_t>(n_, 0)};
  if (spec_.p > 1) r.c[0] = 1;
  return r;
}

FieldElement AmbientField::from_int(long v) const {
  long p = spec_.p;
  long r = ((v % p) + p) % p;
  FieldElement out{std::vector<std::uint32_t>(n_, 0)};
  out.c[0] = static_cast<std::uint32_t>(r);
  return out;
}

FieldElement AmbientField::from_coeffs(const FpVec& c) const {
  if (c.size() > n_)
    fail(Err::DegreeMismatch, "coefficient vector longer than ambient degree");
  for (auto v : c)
    if (v >= spec_.p) fail(Err::InvalidArgument, "coefficient out of range");
  FieldElement out{c};
  out.c.resize(n_, 0);
  return out;
}

FieldElement AmbientField::embed_base(const FpVec& a) const {
  if (a.size() > spec_.e)
    fail(Err::DegreeMismatch, "base-field vector longer than e");
  FieldElement acc = zero();
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = mul(acc, base_root_);
    if (a[i] >= spec_.p) fail(Err::InvalidArgument, "coefficient out of range");
    acc.c[0] = static_cast<std::uint32_t>((acc.c[0] + a[i]) % spec_.p);
  }
  return acc;
}

bool AmbientField::is_zero_span(const std::uint32_t* a) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    if (a[i]) return false;
  return true;
}

void AmbientField::add_span(const std::uint32_t* a, const std::uint32_t* b,
                            std::uint32_t* r) const {
  const std::uint32_t p = spec_.p;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t v = a[i] + b[i];
    r[i] = v >= p ? v - p : v;
  }
}

void AmbientField::sub_span(const std::uint32_t* a, const std::uint32_t* b,
                            std::uint32_t* r) const {
  const std::uint32_t p = spec_.p;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t v = a[i] + p - b[i];
    r[i] = v >= p ? v - p : v;
  }
}

void AmbientField::neg_span(const std::uint32_t* a, std::uint32_t* r) const {
  const std::uint32_t p = spec_.p;
  for (std::uint32_t i = 0; i < n_; ++i) r[i] = a[i] ? p - a[i] : 0;
}

void AmbientField::scalar_mul_span(std::uint32_t c, const std::uint32_t* a,
                                   std::uint32_t* r) const {
  const std::uint32_t p = spec_.p;
  std::uint64_t cc = c % p;
  for (std::uint32_t i = 0; i < n_; ++i)
    r[i] = static_cast<std::uint32_t>(cc * a[i] % p);
}

void AmbientField::mul_span(const std::uint32_t* a, const std::uint32_t* b,
                            std::uint32_t* r) const {
  const std::uint32_t n = n_, p = spec_.p;
  std::uint64_t acc[2 * kMaxDeg];
  const std::uint32_t na = 2 * n - 1;
  std::fill(acc, acc + na, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    std::uint64_t ai = a[i];
    for (std::uint32_t j = 0; j < n; ++j) acc[i + j] += ai * b[j];
  }
  for (std::uint32_t i = na; i-- > n;) {
    std::uint64_t c = acc[i] % p;
    if (!c) continue;
    const std::uint32_t* row = red_.data() + std::size_t(i - n) * n;
    for (std::uint32_t j = 0; j < n; ++j) acc[j] += c * row[j];
  }
  for (std::uint32_t j = 0; j < n; ++j)
    r[j] = static_cast<std::uint32_t>(acc[j] % p);
}

bool AmbientField::inv_span(const std::uint32_t* a, std::uint32_t* r) const {
  if (is_zero_span(a)) return false;
  const std::uint32_t p = spec_.p;
  FpVec r0 = mod_, r1(a, a + n_), s0, s1{1};
  fp_trim(r1);
  while (fp_degree(r1) > 0) {
    FpVec q, rem;
    fp_divmod(r0, r1, p, q, rem);
    r0 = r1;
    r1 = rem;
    // s_{k+1} = s_{k-1} - q s_k
    FpVec qs = fp_mul(q, s1, p);
    FpVec snew = s0;
    if (snew.size() < qs.size()) snew.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i)
      snew[i] = static_cast<std::uint32_t>((snew[i] + p - qs[i]) % p);
    s0 = s1;
    s1 = snew;
  }
  // r1 is a nonzero constant; scale s1 by its inverse
  std::uint32_t cinv = fp_inv(r1[0], p);
  fp_mod_inplace(s1, mod_, p);
  s1.resize(n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i)
    r[i] = static_cast<std::uint32_t>(std::uint64_t(s1[i]) * cinv % p);
  return true;
}

void AmbientField::pow_p_span(const std::uint32_t* a, std::uint32_t* r) const {
  frobp_.apply(a, r);
}

void AmbientField::check_len(const FieldElement& a) const {
  if (a.c.size() != n_)
    fail(Err::DegreeMismatch, "element does not belong to this field");
}

FieldElement AmbientField::add(const FieldElement& a,
                               const FieldElement& b) const {
  check_len(a);
  check_len(b);
  FieldElement r = zero();
  add_span(a.c.data(), b.c.data(), r.c.data());
  return r;
}

FieldElement AmbientField::sub(const FieldElement& a,
                               const FieldElement& b) const {
  check_len(a);
  check_len(b);
  FieldElement r = zero();
  sub_span(a.c.data(), b.c.data(), r.c.data());
  return r;
}

FieldElement AmbientField::neg(const FieldElement& a) const {
  check_len(a);
  FieldElement r = zero();
  neg_span(a.c.data(), r.c.data());
  return r;
}

FieldElement AmbientField::mul(const FieldElement& a,
                               const FieldElement& b) const {
  check_len(a);
  check_len(b);
  FieldElement r = zero();
  mul_span(a.c.data(), b.c.data(), r.c.data());
  return r;
}

FieldElement AmbientField::inv(const FieldElement& a) const {
  check_len(a);
  FieldElement r = zero();
  if (!inv_span(a.c.data(), r.c.data()))
    fail(Err::InvalidArgument, "zero has no inverse");
  return r;
}

FieldElement AmbientField::pow(const FieldElement& a, const Int& k) const {
  check_len(a);
  if (k < 0) fail(Err::InvalidArgument, "negative exponent");
  FieldElement result = one();
  if (k == 0) return result;
  std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(k.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

FieldElement AmbientField::frob_q(const FieldElement& a,
                                  std::uint32_t s) const {
  check_len(a);
  std::uint64_t t = (std::uint64_t(spec_.e) * s) % n_;
  FieldElement r = a;
  FieldElement tmp = zero();
  for (std::uint64_t i = 0; i < t; ++i) {
    pow_p_span(r.c.data(), tmp.c.data());
    std::swap(r, tmp);
  }
  return r;
}

FpLinearMap AmbientField::frobenius_power(std::uint32_t s) const {
  std::uint64_t t = (std::uint64_t(spec_.e) * s) % n_;
  FpLinearMap result = identity_map(n_, spec_.p);
  FpLinearMap base = frobp_;
  while (t) {
    if (t & 1) result = matmul(result, base);
    t >>= 1;
    if (t) base = matmul(base, base);
  }
  return result;
}

bool AmbientField::in_subfield(const FieldElement& a, std::uint32_t s) const {
  check_len(a);
  FpLinearMap frob = frobenius_power(s);
  return in_subfield_span(frob, a.c.data());
}

bool AmbientField::in_subfield_span(const FpLinearMap& frob,
                                    const std::uint32_t* a) const {
  std::uint32_t tmp[kMaxDeg];
  frob.apply(a, tmp);
  return std::equal(tmp, tmp + n_, a);
}

std::vector<FieldElement> AmbientField::subfield_basis(std::uint32_t s) const {
  const std::uint32_t n = n_, p = spec_.p;
  FpLinearMap M = frobenius_power(s);
  // K = M - I, then a reduced echelon kernel basis
  std::vector<std::uint32_t> K = M.a;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t& d = K[std::size_t(i) * n + i];
    d = (d + p - 1) % p;
  }
  std::vector<int> pivot_row_of_col(n, -1);
  std::uint32_t r = 0;
  for (std::uint32_t col = 0; col < n && r < n; ++col) {
    std::uint32_t sel = r;
    while (sel < n && K[std::size_t(sel) * n + col] == 0) ++sel;
    if (sel == n) continue;
    if (sel != r)
      for (std::uint32_t j = 0; j < n; ++j)
        std::swap(K[std::size_t(sel) * n + j], K[std::size_t(r) * n + j]);
    std::uint32_t linv = fp_inv(K[std::size_t(r) * n + col], p);
    for (std::uint32_t j = 0; j < n; ++j)
      K[std::size_t(r) * n + j] = static_cast<std::uint32_t>(
          std::uint64_t(K[std::size_t(r) * n + j]) * linv % p);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == r) continue;
      std::uint64_t f = K[std::size_t(i) * n + col];
      if (!f) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t sub = f * K[std::size_t(r) * n + j] % p;
        K[std::size_t(i) * n + j] = static_cast<std::uint32_t>(
            (K[std::size_t(i) * n + j] + p - sub) % p);
      }
    }
    pivot_row_of_col[col] = static_cast<int>(r);
    ++r;
  }
  std::vector<FieldElement> basis;
  for (std::uint32_t fc = 0; fc < n; ++fc) {
    if (pivot_row_of_col[fc] >= 0) continue;
    FieldElement v = zero();
    v.c[fc] = 1;
    for (std::uint32_t c = 0; c < n; ++c) {
      int pr = pivot_row_of_col[c];
      if (pr < 0) continue;
      std::uint32_t coef = K[std::size_t(pr) * n + fc];
      if (coef) v.c[c] = p - coef;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SpanEnumerator::SpanEnumerator(const AmbientField& F,
                               const std::vector<FieldElement>& basis)
    : F_(&F), digits_(basis.size(), 0), cur_(F.deg(), 0) {
  flat_.reserve(basis.size() * F.deg());
  for (const auto& b : basis) {
    if (b.c.size() != F.deg())
      fail(Err::DegreeMismatch, "basis element has wrong length");
    flat_.insert(flat_.end(), b.c.begin(), b.c.end());
  }
}

Int SpanEnumerator::size() const {
  return ipow(F_->p(), digits_.size());
}

bool SpanEnumerator::advance() {
  const std::uint32_t p = F_->p(), n = F_->deg();
  std::size_t j = 0;
  while (j < digits_.size() && digits_[j] == p - 1) {
    // p-th addition of basis[j] wraps its contribution back to zero
    digits_[j] = 0;
    F_->add_span(cur_.data(), flat_.data() + j * n, cur_.data());
    ++j;
  }
  if (j == digits_.size()) return false;  // cycled back to the zero element
  ++digits_[j];
  F_->add_span(cur_.data(), flat_.data() + j * n, cur_.data());
  return true;
}

void SpanEnumerator::reset() {
  std::fill(digits_.begin(), digits_.end(), 0);
  std::fill(cur_.begin(), cur_.end(), 0);
}

}  // namespace pzeta
