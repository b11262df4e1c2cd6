#include "pzeta/faltings.hpp"

#include <set>

namespace pzeta {
namespace {

void check_args(const std::vector<Poly>& eqs,
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

// Walks all grid-satisfying tuples built from `pts`, pruning a component as
// soon as it breaks a constraint against an already-placed one.
struct YWalker {
  const AmbientField& F;
  const std::vector<std::uint32_t>& d;
  std::uint32_t L, nv;
  const std::vector<std::vector<FieldElement>>& pts;
  std::uint64_t max_nodes;
  std::uint64_t& nodes;
  CountStats* stats;
  TwistedPoint cur;

  void run(const std::function<void(const TwistedPoint&)>& fn) {
    cur.comps.assign(L, {});
    walk(0, fn);
  }

  bool new_constraints_ok(std::uint32_t depth) const {
    for (std::uint32_t i = 0; i < nv; ++i) {
      std::uint32_t dd = d[i] % L;
      std::uint32_t fwd = (depth + dd) % L;
      if (fwd <= depth && !(cur.comps[depth][i] == cur.comps[fwd][i]))
        return false;
      std::uint32_t back = (depth + L - dd) % L;
      if (back < depth && !(cur.comps[back][i] == cur.comps[depth][i]))
        return false;
    }
    return true;
  }

  void walk(std::uint32_t depth,
            const std::function<void(const TwistedPoint&)>& fn) {
    if (depth == L) {
      fn(cur);
      return;
    }
    for (const auto& pt : pts) {
      if (++nodes > max_nodes) {
        if (stats) stats->nodes = nodes;
        fail(Err::BudgetExceeded, "node budget exhausted");
      }
      cur.comps[depth] = pt;
      if (new_constraints_ok(depth)) walk(depth + 1, fn);
    }
    cur.comps[depth].clear();
  }
};

struct YContext {
  AmbientField F;
  std::uint32_t L, nv;
  std::vector<std::vector<FieldElement>> pts;  // X(F_{q^{kL}})
  std::uint64_t nodes = 0;  // consumed by the point enumeration
};

YContext make_context(const std::vector<Poly>& eqs,
                      const std::vector<std::uint32_t>& d, std::uint32_t k,
                      const Budget& budget) {
  check_args(eqs, d, k);
  std::uint64_t L = lcm_of(d);
  YContext ctx{AmbientField(eqs[0].field, static_cast<std::uint32_t>(L * k),
                            budget.field),
               static_cast<std::uint32_t>(L),
               static_cast<std::uint32_t>(d.size()),
               {},
               0};
  std::vector<std::vector<FieldElement>> bases(ctx.nv,
                                               ctx.F.subfield_basis(ctx.F.m()));
  CountStats st;
  for_each_solution(eqs, ctx.F, bases, budget, &st,
                    [&](const std::vector<FieldElement>& x) {
                      ctx.pts.push_back(x);
                    });
  ctx.nodes = st.nodes;
  return ctx;
}

bool is_fixed(const AmbientField& F, const FpLinearMap& frobk,
              const TwistedPoint& y) {
  std::uint32_t L = static_cast<std::uint32_t>(y.comps.size());
  std::uint32_t buf[AmbientField::kMaxDeg];
  for (std::uint32_t j = 0; j < L; ++j) {
    const auto& nxt = y.comps[(j + 1) % L];
    for (std::size_t i = 0; i < y.comps[j].size(); ++i) {
      frobk.apply(y.comps[j][i].c.data(), buf);
      for (std::uint32_t w = 0; w < F.deg(); ++w)
        if (buf[w] != nxt[i].c[w]) return false;
    }
  }
  return true;
}

std::string point_key(const std::vector<FieldElement>& pt) {
  std::string key;
  for (const FieldElement& v : pt)
    key.append(reinterpret_cast<const char*>(v.c.data()),
               v.c.size() * sizeof(std::uint32_t));
  return key;
}

}  // namespace

TwistedPoint sigma(const TwistedPoint& y) {
  TwistedPoint r;
  std::size_t L = y.comps.size();
  r.comps.reserve(L);
  if (L == 0) return r;
  r.comps.push_back(y.comps[L - 1]);
  for (std::size_t j = 0; j + 1 < L; ++j) r.comps.push_back(y.comps[j]);
  return r;
}

bool grid_holds(const TwistedPoint& y, const std::vector<std::uint32_t>& d) {
  std::uint32_t L = static_cast<std::uint32_t>(y.comps.size());
  if (L == 0) return true;
  for (std::uint32_t j = 0; j < L; ++j) {
    if (y.comps[j].size() != d.size()) return false;
    for (std::uint32_t i = 0; i < d.size(); ++i) {
      std::uint32_t j2 = (j + d[i]) % L;
      if (!(y.comps[j][i] == y.comps[j2][i])) return false;
    }
  }
  return true;
}

Int fixed_points_sigma_frob(const std::vector<Poly>& eqs,
                            const std::vector<std::uint32_t>& d,
                            std::uint32_t k, const Budget& budget,
                            CountStats* stats) {
  YContext ctx = make_context(eqs, d, k, budget);
  FpLinearMap frobk = ctx.F.frobenius_power(k);
  std::uint64_t nodes = ctx.nodes;
  Int fixed = 0;
  YWalker walker{ctx.F, d,     ctx.L, ctx.nv, ctx.pts,
                 budget.max_nodes, nodes, stats, {}};
  walker.run([&](const TwistedPoint& y) {
    if (is_fixed(ctx.F, frobk, y)) fixed += 1;
  });
  if (stats) stats->nodes = nodes;
  return fixed;
}

YMembershipReport verify_y_membership(const std::vector<Poly>& eqs,
                                      const std::vector<std::uint32_t>& d,
                                      std::uint32_t k, const Budget& budget,
                                      CountStats* stats) {
  YContext ctx = make_context(eqs, d, k, budget);
  FpLinearMap frobk = ctx.F.frobenius_power(k);
  std::vector<FpLinearMap> sub;
  sub.reserve(ctx.nv);
  for (std::uint32_t i = 0; i < ctx.nv; ++i)
    sub.push_back(ctx.F.frobenius_power(d[i] * k));
  YMembershipReport rep;
  rep.sigma_stable = true;
  rep.first_components_in_subfields = true;
  rep.first_components_distinct = true;
  std::set<std::string> firsts;
  std::uint64_t nodes = ctx.nodes;
  YWalker walker{ctx.F, d,     ctx.L, ctx.nv, ctx.pts,
                 budget.max_nodes, nodes, stats, {}};
  walker.run([&](const TwistedPoint& y) {
    rep.y_points += 1;
    if (!grid_holds(sigma(y), d)) rep.sigma_stable = false;
    if (!is_fixed(ctx.F, frobk, y)) return;
    rep.fixed_points += 1;
    for (std::uint32_t i = 0; i < ctx.nv; ++i)
      if (!ctx.F.in_subfield_span(sub[i], y.comps[0][i].c.data()))
        rep.first_components_in_subfields = false;
    if (!firsts.insert(point_key(y.comps[0])).second)
      rep.first_components_distinct = false;
  });
  if (stats) stats->nodes = nodes;
  return rep;
}

}  // namespace pzeta
