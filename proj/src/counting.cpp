#include "pzeta/counting.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace pzeta {
namespace {

// ---- univariate polynomials with ambient coefficients (for shortcut B) ----
// Coefficient i occupies the span c[i*nw .. (i+1)*nw); deg is authoritative,
// slots above it are scratch.

struct UniP {
  std::vector<std::uint32_t> c;
  int deg = -1;
};

UniP uni_with_deg(const AmbientField& F, int deg) {
  UniP r;
  r.deg = deg;
  r.c.assign(std::size_t(deg + 1) * F.deg(), 0);
  return r;
}

std::uint32_t* uni_at(const AmbientField& F, UniP& a, int i) {
  return a.c.data() + std::size_t(i) * F.deg();
}

const std::uint32_t* uni_at(const AmbientField& F, const UniP& a, int i) {
  return a.c.data() + std::size_t(i) * F.deg();
}

void uni_trim(const AmbientField& F, UniP& a) {
  while (a.deg >= 0 && F.is_zero_span(uni_at(F, a, a.deg))) --a.deg;
}

UniP uni_x(const AmbientField& F) {
  UniP r = uni_with_deg(F, 1);
  uni_at(F, r, 1)[0] = 1;
  return r;
}

UniP uni_one(const AmbientField& F) {
  UniP r = uni_with_deg(F, 0);
  uni_at(F, r, 0)[0] = 1;
  return r;
}

void uni_monic(const AmbientField& F, UniP& a) {
  uni_trim(F, a);
  if (a.deg < 0) return;
  const std::uint32_t nw = F.deg();
  std::uint32_t linv[AmbientField::kMaxDeg];
  const std::uint32_t* lead = uni_at(F, a, a.deg);
  bool lead_is_one = lead[0] == 1;
  for (std::uint32_t i = 1; lead_is_one && i < nw; ++i)
    lead_is_one = lead[i] == 0;
  if (lead_is_one) return;
  F.inv_span(lead, linv);
  for (int i = 0; i <= a.deg; ++i)
    F.mul_span(uni_at(F, a, i), linv, uni_at(F, a, i));
}

// a mod b in place; b must be monic with deg >= 0
void uni_rem_inplace(const AmbientField& F, UniP& a, const UniP& b) {
  const std::uint32_t nw = F.deg();
  if (b.deg == 0) {
    a.deg = -1;
    return;
  }
  std::uint32_t tmp[AmbientField::kMaxDeg];
  for (int i = a.deg; i >= b.deg; --i) {
    const std::uint32_t* f = uni_at(F, a, i);
    if (F.is_zero_span(f)) continue;
    std::uint32_t fc[AmbientField::kMaxDeg];
    std::copy(f, f + nw, fc);
    for (int l = 0; l <= b.deg; ++l) {
      F.mul_span(fc, uni_at(F, b, l), tmp);
      F.sub_span(uni_at(F, a, i - b.deg + l), tmp,
                 uni_at(F, a, i - b.deg + l));
    }
  }
  a.deg = std::min(a.deg, b.deg - 1);
  uni_trim(F, a);
}

UniP uni_sub(const AmbientField& F, const UniP& a, const UniP& b) {
  int d = std::max(a.deg, b.deg);
  UniP r = uni_with_deg(F, d < 0 ? 0 : d);
  for (int i = 0; i <= d; ++i) {
    std::uint32_t buf[AmbientField::kMaxDeg];
    std::fill(buf, buf + F.deg(), 0);
    if (i <= a.deg) std::copy(uni_at(F, a, i), uni_at(F, a, i) + F.deg(), buf);
    if (i <= b.deg) F.sub_span(buf, uni_at(F, b, i), buf);
    std::copy(buf, buf + F.deg(), uni_at(F, r, i));
  }
  r.deg = d;
  uni_trim(F, r);
  return r;
}

UniP uni_gcd(const AmbientField& F, UniP a, UniP b) {
  uni_trim(F, a);
  uni_trim(F, b);
  while (b.deg >= 0) {
    uni_monic(F, b);
    uni_rem_inplace(F, a, b);
    std::swap(a, b);
  }
  uni_monic(F, a);
  return a;
}

// a*b mod g (g monic)
UniP uni_mulmod(const AmbientField& F, const UniP& a, const UniP& b,
                const UniP& g) {
  if (a.deg < 0 || b.deg < 0) return UniP{};
  UniP prod = uni_with_deg(F, a.deg + b.deg);
  std::uint32_t tmp[AmbientField::kMaxDeg];
  for (int i = 0; i <= a.deg; ++i) {
    if (F.is_zero_span(uni_at(F, a, i))) continue;
    for (int j = 0; j <= b.deg; ++j) {
      F.mul_span(uni_at(F, a, i), uni_at(F, b, j), tmp);
      F.add_span(uni_at(F, prod, i + j), tmp, uni_at(F, prod, i + j));
    }
  }
  uni_trim(F, prod);
  uni_rem_inplace(F, prod, g);
  return prod;
}

// x^exp mod g (g monic, deg >= 1)
UniP uni_pow_x_mod(const AmbientField& F, std::uint64_t exp, const UniP& g) {
  UniP r = uni_one(F);
  uni_rem_inplace(F, r, g);
  UniP b = uni_x(F);
  uni_rem_inplace(F, b, g);
  while (exp) {
    if (exp & 1) r = uni_mulmod(F, r, b, g);
    exp >>= 1;
    if (exp) b = uni_mulmod(F, b, b, g);
  }
  return r;
}

// x^{q^s} mod g for monic g of degree >= 2, via e*s rounds of p-th powering:
// in characteristic p, t(x)^p mod g = sum_i t_i^p * (x^p)^i mod g.
UniP uni_frob_x(const AmbientField& F, const UniP& g, std::uint32_t s) {
  const int D = g.deg;
  UniP xp = uni_pow_x_mod(F, F.p(), g);
  std::vector<UniP> XP(D);
  XP[0] = uni_one(F);
  if (D > 1) XP[1] = xp;
  for (int i = 2; i < D; ++i) XP[i] = uni_mulmod(F, XP[i - 1], xp, g);
  UniP t = uni_x(F);  // valid since D >= 2
  std::uint64_t steps = std::uint64_t(F.e()) * s;
  std::uint32_t fc[AmbientField::kMaxDeg];
  std::uint32_t tmp[AmbientField::kMaxDeg];
  for (std::uint64_t step = 0; step < steps; ++step) {
    UniP nt = uni_with_deg(F, D - 1);
    for (int i = 0; i <= t.deg; ++i) {
      if (F.is_zero_span(uni_at(F, t, i))) continue;
      F.pow_p_span(uni_at(F, t, i), fc);
      const UniP& xpi = XP[i];
      for (int l = 0; l <= xpi.deg; ++l) {
        F.mul_span(fc, uni_at(F, xpi, l), tmp);
        F.add_span(uni_at(F, nt, l), tmp, uni_at(F, nt, l));
      }
    }
    uni_trim(F, nt);
    t = std::move(nt);
  }
  return t;
}

// ---- the pruned partial-count kernel ----

struct KEq {
  std::uint32_t nterms = 0;
  std::vector<std::uint32_t> exps;    // nterms * nv
  std::vector<int> support_max;       // max var index with positive exponent
  std::vector<std::vector<std::uint32_t>> const_terms;  // per depth
  std::vector<std::uint32_t> open_count;                // per depth
  std::vector<std::uint32_t> cache;   // (nv+1) * nterms * nw
};

class PartialCounter {
 public:
  PartialCounter(const AmbientField& F, const std::vector<Poly>& eqs,
                 const std::vector<std::uint32_t>& d, std::uint32_t k,
                 const Budget& budget, CountStats* stats)
      : F_(F),
        nw_(F.deg()),
        nv_(static_cast<std::uint32_t>(d.size())),
        budget_(budget),
        stats_(stats) {
    dk_.resize(nv_);
    subsize_.resize(nv_);
    for (std::uint32_t i = 0; i < nv_; ++i) {
      dk_[i] = d[i] * k;
      subsize_[i] = F_.subfield_size(dk_[i]);
    }
    tail_.assign(nv_ + 1, Int(1));
    for (std::uint32_t j = nv_; j-- > 0;) tail_[j] = tail_[j + 1] * subsize_[j];

    maxe_.assign(nv_, 0);
    for (const Poly& f : eqs) {
      AmbientPoly ap = lift_poly(f, F_);
      KEq e;
      e.nterms = static_cast<std::uint32_t>(ap.terms.size());
      e.exps.resize(std::size_t(e.nterms) * nv_);
      e.support_max.resize(e.nterms);
      e.cache.assign(std::size_t(nv_ + 1) * e.nterms * nw_, 0);
      for (std::uint32_t t = 0; t < e.nterms; ++t) {
        int smax = -1;
        for (std::uint32_t v = 0; v < nv_; ++v) {
          std::uint32_t ex = ap.terms[t].first[v];
          e.exps[std::size_t(t) * nv_ + v] = ex;
          if (ex) {
            smax = static_cast<int>(v);
            maxe_[v] = std::max(maxe_[v], ex);
          }
        }
        e.support_max[t] = smax;
        std::copy(ap.terms[t].second.c.begin(), ap.terms[t].second.c.end(),
                  e.cache.begin() + std::size_t(t) * nw_);
      }
      e.const_terms.resize(nv_ + 1);
      e.open_count.resize(nv_ + 1);
      for (std::uint32_t j = 0; j <= nv_; ++j) {
        for (std::uint32_t t = 0; t < e.nterms; ++t)
          if (e.support_max[t] < static_cast<int>(j))
            e.const_terms[j].push_back(t);
        e.open_count[j] =
            e.nterms - static_cast<std::uint32_t>(e.const_terms[j].size());
      }
      eqs_.push_back(std::move(e));
    }

    pow_buf_.resize(nv_);
    for (std::uint32_t v = 0; v < nv_; ++v)
      pow_buf_[v].assign(std::size_t(maxe_[v] + 1) * nw_, 0);

    for (std::uint32_t v = 0; v + 1 < nv_; ++v)
      enums_.emplace_back(F_, F_.subfield_basis(dk_[v]));
  }

  Int run() {
    Int total = rec(0);
    flush();
    return total;
  }

 private:
  const std::uint32_t* cache_at(const KEq& e, std::uint32_t depth,
                                std::uint32_t t) const {
    return e.cache.data() + (std::size_t(depth) * e.nterms + t) * nw_;
  }
  std::uint32_t* cache_at(KEq& e, std::uint32_t depth, std::uint32_t t) {
    return e.cache.data() + (std::size_t(depth) * e.nterms + t) * nw_;
  }

  void flush() {
    if (stats_) stats_->nodes = nodes_;
  }

  void bump() {
    if (++nodes_ > budget_.max_nodes) {
      flush();
      fail(Err::BudgetExceeded, "node budget exhausted");
    }
  }

  // specialize variable j to value v: fill cache depth j+1
  void apply_value(std::uint32_t j, const std::uint32_t* v) {
    std::uint32_t* pw = pow_buf_[j].data();
    std::uint32_t me = maxe_[j];
    if (me >= 1) std::copy(v, v + nw_, pw + nw_);
    for (std::uint32_t l = 2; l <= me; ++l)
      F_.mul_span(pw + std::size_t(l - 1) * nw_, v, pw + std::size_t(l) * nw_);
    for (KEq& e : eqs_) {
      for (std::uint32_t t = 0; t < e.nterms; ++t) {
        std::uint32_t ex = e.exps[std::size_t(t) * nv_ + j];
        const std::uint32_t* src = cache_at(e, j, t);
        std::uint32_t* dst = cache_at(e, j + 1, t);
        if (ex == 0)
          std::copy(src, src + nw_, dst);
        else
          F_.mul_span(src, pw + std::size_t(ex) * nw_, dst);
      }
    }
  }

  Int rec(std::uint32_t j) {
    // evaluate the constant part of each equation at this depth
    std::uint32_t sbuf[AmbientField::kMaxDeg];
    bool all_satisfied = true;
    for (const KEq& e : eqs_) {
      std::fill(sbuf, sbuf + nw_, 0);
      for (std::uint32_t t : e.const_terms[j])
        F_.add_span(sbuf, cache_at(e, j, t), sbuf);
      if (e.open_count[j] == 0) {
        if (!F_.is_zero_span(sbuf)) return 0;  // contradiction: prune
      } else {
        all_satisfied = false;
      }
    }
    if (all_satisfied) return tail_[j];  // shortcut A: free tail
    if (j == nv_ - 1) return last_var(j);  // shortcut B
    SpanEnumerator& en = enums_[j];
    en.reset();
    Int acc = 0;
    do {
      bump();
      apply_value(j, en.current());
      acc += rec(j + 1);
    } while (en.advance());
    return acc;
  }

  const FpLinearMap& frob_for(std::uint32_t s) {
    auto it = frobs_.find(s);
    if (it == frobs_.end())
      it = frobs_.emplace(s, F_.frobenius_power(s)).first;
    return it->second;
  }

  Int last_var(std::uint32_t j) {
    bump();  // one resolution of the final variable
    const std::uint32_t last = nv_ - 1;
    const std::uint32_t s = dk_[last];
    UniP g;
    bool have = false;
    for (const KEq& e : eqs_) {
      if (e.open_count[j] == 0) continue;  // satisfied constant, checked in rec
      int dmax = 0;
      for (std::uint32_t t = 0; t < e.nterms; ++t)
        dmax = std::max(dmax,
                        static_cast<int>(e.exps[std::size_t(t) * nv_ + last]));
      UniP ge = uni_with_deg(F_, dmax);
      for (std::uint32_t t = 0; t < e.nterms; ++t) {
        int l = static_cast<int>(e.exps[std::size_t(t) * nv_ + last]);
        F_.add_span(uni_at(F_, ge, l), cache_at(e, j, t), uni_at(F_, ge, l));
      }
      uni_trim(F_, ge);
      if (ge.deg < 0) continue;  // vanished identically in the last variable
      if (ge.deg == 0) return 0;  // nonzero constant: no solutions
      if (!have) {
        g = std::move(ge);
        have = true;
      } else {
        g = uni_gcd(F_, std::move(g), std::move(ge));
        if (g.deg == 0) return 0;  // coprime equations
      }
    }
    if (!have) return subsize_[last];  // every equation vanished
    uni_monic(F_, g);
    if (g.deg == 1) {
      // single root -g_0; count it if it lies in the subfield
      std::uint32_t root[AmbientField::kMaxDeg];
      F_.neg_span(uni_at(F_, g, 0), root);
      return F_.in_subfield_span(frob_for(s), root) ? 1 : 0;
    }
    UniP t = uni_frob_x(F_, g, s);
    UniP diff = uni_sub(F_, t, uni_x(F_));
    UniP r = uni_gcd(F_, std::move(g), std::move(diff));
    return Int(r.deg < 0 ? 0 : r.deg);
  }

  const AmbientField& F_;
  std::uint32_t nw_;
  std::uint32_t nv_;
  Budget budget_;
  CountStats* stats_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint32_t> dk_;
  std::vector<Int> subsize_;
  std::vector<Int> tail_;
  std::vector<KEq> eqs_;
  std::vector<std::uint32_t> maxe_;
  std::vector<std::vector<std::uint32_t>> pow_buf_;
  std::vector<SpanEnumerator> enums_;
  std::map<std::uint32_t, FpLinearMap> frobs_;
};

void check_system(const std::vector<Poly>& eqs,
                  const std::vector<std::uint32_t>& d, std::uint32_t k) {
  if (d.empty()) fail(Err::InvalidArgument, "need at least one variable");
  if (k < 1) fail(Err::InvalidArgument, "k must be >= 1");
  for (auto di : d)
    if (di < 1) fail(Err::InvalidArgument, "each d_i must be >= 1");
  if (eqs.empty())
    fail(Err::InvalidArgument,
         "need at least one polynomial (use 0 for affine space)");
  for (const Poly& f : eqs) {
    if (f.nvars != d.size())
      fail(Err::DegreeMismatch, "equation arity does not match d");
    if (f.field.p != eqs[0].field.p || f.field.e != eqs[0].field.e ||
        f.field.base_modulus != eqs[0].field.base_modulus)
      fail(Err::DegreeMismatch, "equations over different base fields");
  }
}

}  // namespace

std::uint64_t lcm_of(const std::vector<std::uint32_t>& d) {
  std::uint64_t l = 1;
  for (auto v : d) {
    if (!v) fail(Err::InvalidArgument, "each d_i must be >= 1");
    l = std::lcm(l, std::uint64_t(v));
    if (l > 1'000'000) fail(Err::BudgetExceeded, "lcm of d is too large");
  }
  return l;
}

Int count_partial(const std::vector<Poly>& eqs,
                  const std::vector<std::uint32_t>& d, std::uint32_t k,
                  const Budget& budget, CountStats* stats,
                  std::uint32_t modulus_rank) {
  check_system(eqs, d, k);
  std::uint64_t L = lcm_of(d);
  AmbientField F(eqs[0].field, static_cast<std::uint32_t>(L * k), budget.field,
                 modulus_rank);
  PartialCounter pc(F, eqs, d, k, budget, stats);
  return pc.run();
}

void for_each_solution(
    const std::vector<Poly>& eqs, const AmbientField& F,
    const std::vector<std::vector<FieldElement>>& var_bases,
    const Budget& budget, CountStats* stats,
    const std::function<void(const std::vector<FieldElement>&)>& fn) {
  const std::uint32_t nv = static_cast<std::uint32_t>(var_bases.size());
  std::vector<AmbientPoly> lifted;
  for (const Poly& f : eqs) {
    if (f.nvars != nv)
      fail(Err::DegreeMismatch, "equation arity does not match variable count");
    lifted.push_back(lift_poly(f, F));
  }
  std::vector<SpanEnumerator> ens;
  for (const auto& b : var_bases) ens.emplace_back(F, b);
  std::vector<FieldElement> point(nv, F.zero());
  std::uint64_t nodes = 0;
  auto bump = [&] {
    ++nodes;
    if (stats) stats->nodes = nodes;
    if (nodes > budget.max_nodes)
      fail(Err::BudgetExceeded, "node budget exhausted");
  };
  // literal nested loops; no pruning of any kind
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t depth) {
    if (depth == nv) {
      for (const AmbientPoly& ap : lifted)
        if (!(eval_poly(ap, F, point) == F.zero())) return;
      fn(point);
      return;
    }
    SpanEnumerator& en = ens[depth];
    en.reset();
    do {
      bump();
      point[depth] = en.current_element();
      walk(depth + 1);
    } while (en.advance());
  };
  walk(0);
}

Int count_partial_bruteforce(const std::vector<Poly>& eqs,
                             const std::vector<std::uint32_t>& d,
                             std::uint32_t k, const Budget& budget,
                             CountStats* stats, std::uint32_t modulus_rank) {
  check_system(eqs, d, k);
  std::uint64_t L = lcm_of(d);
  AmbientField F(eqs[0].field, static_cast<std::uint32_t>(L * k), budget.field,
                 modulus_rank);
  std::vector<std::vector<FieldElement>> bases;
  for (std::size_t i = 0; i < d.size(); ++i)
    bases.push_back(F.subfield_basis(d[i] * k));
  Int cnt = 0;
  for_each_solution(eqs, F, bases, budget, stats,
                    [&](const std::vector<FieldElement>&) { cnt += 1; });
  return cnt;
}

Int count_classical(const std::vector<Poly>& eqs, std::uint32_t k,
                    const Budget& budget, CountStats* stats) {
  if (eqs.empty())
    fail(Err::InvalidArgument,
         "need at least one polynomial (use 0 for affine space)");
  std::vector<std::uint32_t> d(eqs[0].nvars, 1);
  return count_partial(eqs, d, k, budget, stats);
}

std::vector<Int> count_series(const std::vector<Poly>& eqs,
                              const std::vector<std::uint32_t>& d,
                              std::uint32_t kmax, const Budget& budget,
                              CountStats* stats) {
  if (kmax < 1) fail(Err::InvalidArgument, "kmax must be >= 1");
  std::vector<Int> out;
  CountStats local;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    Budget b = budget;
    if (local.nodes >= budget.max_nodes)
      fail(Err::BudgetExceeded, "node budget exhausted");
    b.max_nodes = budget.max_nodes - local.nodes;
    CountStats step;
    out.push_back(count_partial(eqs, d, k, b, &step));
    local.nodes += step.nodes;
    if (stats) stats->nodes = local.nodes;
  }
  return out;
}

Int count_generalized(const std::vector<Poly>& eqs,
                      const std::vector<Poly>& maps,
                      const std::vector<std::uint32_t>& d, std::uint32_t k,
                      const Budget& budget, CountStats* stats) {
  if (maps.empty()) fail(Err::InvalidArgument, "need at least one map");
  if (maps.size() != d.size())
    fail(Err::InvalidArgument, "one d_j per map component required");
  if (k < 1) fail(Err::InvalidArgument, "k must be >= 1");
  for (auto dj : d)
    if (dj < 1) fail(Err::InvalidArgument, "each d_j must be >= 1");
  if (eqs.empty())
    fail(Err::InvalidArgument,
         "need at least one polynomial (use 0 for affine space)");
  const std::uint32_t nv = eqs[0].nvars;
  for (const Poly& f : maps)
    if (f.nvars != nv)
      fail(Err::DegreeMismatch, "map arity does not match equations");
  std::uint64_t L = lcm_of(d);
  AmbientField F(eqs[0].field, static_cast<std::uint32_t>(L * k), budget.field);
  std::vector<AmbientPoly> lm;
  for (const Poly& f : maps) lm.push_back(lift_poly(f, F));
  std::vector<FpLinearMap> frob;
  for (std::size_t jm = 0; jm < maps.size(); ++jm)
    frob.push_back(F.frobenius_power(d[jm] * k));
  // every variable ranges over the whole ambient field
  std::vector<std::vector<FieldElement>> bases(
      nv, F.subfield_basis(F.m()));
  Int cnt = 0;
  std::unordered_map<std::string, std::vector<FieldElement>> images;
  for_each_solution(eqs, F, bases, budget, stats,
                    [&](const std::vector<FieldElement>& x) {
    std::vector<FieldElement> vals;
    vals.reserve(lm.size());
    for (const AmbientPoly& ap : lm) vals.push_back(eval_poly(ap, F, x));
    for (std::size_t jm = 0; jm < vals.size(); ++jm)
      if (!F.in_subfield_span(frob[jm], vals[jm].c.data())) return;
    // qualifying point: record its image for the injectivity check
    std::string key;
    key.reserve(vals.size() * F.deg() * sizeof(std::uint32_t));
    for (const FieldElement& v : vals)
      key.append(reinterpret_cast<const char*>(v.c.data()),
                 v.c.size() * sizeof(std::uint32_t));
    auto [it, fresh] = images.emplace(key, x);
    if (!fresh && !(it->second == x))
      fail(Err::InjectivityViolated,
           "two points of X share the same image under the map");
    if (fresh) cnt += 1;
  });
  return cnt;
}

}  // namespace pzeta
