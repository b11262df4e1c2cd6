#include "pzeta/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace pzeta {
namespace {

// F_q coefficient helpers: vectors over F_p reduced mod base_modulus

FpVec cadd(FpVec a, const FpVec& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  fp_trim(a);
  return a;
}

FpVec cneg(FpVec a, std::uint32_t p) {
  for (auto& c : a) c = c ? p - c : 0;
  return a;
}

FpVec cmul(const FpVec& a, const FpVec& b, const FieldSpec& fs) {
  FpVec r = fp_mul(a, b, fs.p);
  fp_mod_inplace(r, fs.base_modulus, fs.p);
  return r;
}

// true when a precedes b in display order: total degree descending, ties by
// exponent vector with x1 strongest
bool grlex_before(const std::vector<std::uint32_t>& a,
                  const std::vector<std::uint32_t>& b) {
  std::uint64_t ta = 0, tb = 0;
  for (auto v : a) ta += v;
  for (auto v : b) tb += v;
  if (ta != tb) return ta > tb;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

struct ExpOrder {
  bool operator()(const std::vector<std::uint32_t>& a,
                  const std::vector<std::uint32_t>& b) const {
    return grlex_before(a, b);
  }
};

using TermMap = std::map<std::vector<std::uint32_t>, FpVec, ExpOrder>;

Poly from_map(const FieldSpec& fs, std::uint32_t nvars, TermMap&& m) {
  Poly out{fs, nvars, {}};
  for (auto& [e, c] : m) {
    fp_trim(c);
    if (!c.empty()) out.terms.push_back(Term{std::move(c), e});
  }
  return out;
}

void accumulate(TermMap& m, const std::vector<std::uint32_t>& e, const FpVec& c,
                std::uint32_t p) {
  auto it = m.find(e);
  if (it == m.end())
    m.emplace(e, c);
  else
    it->second = cadd(std::move(it->second), c, p);
}

void check_compat(const Poly& f, const Poly& g) {
  if (f.field.p != g.field.p || f.field.e != g.field.e ||
      f.field.base_modulus != g.field.base_modulus || f.nvars != g.nvars)
    fail(Err::DegreeMismatch, "polynomials over different rings");
}

// recursive-descent parser; positions are 1-based columns into src
struct Parser {
  const std::string& s;
  std::size_t i = 0;
  long line;
  const FieldSpec& fs;
  std::uint32_t nvars;

  [[noreturn]] void err(Err kind, const std::string& msg, std::size_t at) {
    fail_at(kind, msg, line, static_cast<long>(at) + 1);
  }

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  bool eat(char c) {
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  std::uint64_t parse_uint() {
    std::size_t start = i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      err(Err::Parse, "expected a number", i);
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1'000'000'000'000ull) err(Err::Parse, "number too large", start);
      ++i;
    }
    return v;
  }

  Poly parse_atom() {
    skip_ws();
    if (i >= s.size()) err(Err::Parse, "unexpected end of input", i);
    char c = s[i];
    if (c == '(') {
      ++i;
      Poly e = parse_expr();
      skip_ws();
      if (!eat(')')) err(Err::Parse, "expected ')'", i);
      return e;
    }
    if (c == '-') {
      ++i;
      return poly_neg(parse_atom());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = parse_uint();
      return const_poly(fs, nvars, static_cast<long>(v % fs.p));
    }
    if (c == 'g') {
      std::size_t at = i;
      if (i + 1 < s.size() &&
          std::isalnum(static_cast<unsigned char>(s[i + 1])))
        err(Err::Parse, "unknown symbol", at);
      if (fs.e == 1)
        err(Err::UnknownVariable, "generator g undefined over a prime field",
            at);
      ++i;
      Poly out{fs, nvars, {}};
      out.terms.push_back(
          Term{FpVec{0, 1}, std::vector<std::uint32_t>(nvars, 0)});
      return out;
    }
    if (c == 'x') {
      std::size_t at = i;
      ++i;
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        err(Err::Parse, "expected variable index after 'x'", at);
      std::uint64_t idx = parse_uint();
      if (idx < 1 || idx > nvars)
        err(Err::UnknownVariable, "unknown variable x" + std::to_string(idx),
            at);
      Poly out{fs, nvars, {}};
      std::vector<std::uint32_t> e(nvars, 0);
      e[idx - 1] = 1;
      out.terms.push_back(Term{FpVec{1}, std::move(e)});
      return out;
    }
    err(Err::Parse, std::string("unexpected character '") + c + "'", i);
  }

  Poly parse_factor() {
    Poly a = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      std::size_t at = i;
      std::uint64_t n = parse_uint();
      if (n > 1'000'000) err(Err::Parse, "exponent too large", at);
      a = poly_pow(a, static_cast<std::uint32_t>(n));
    }
    return a;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        acc = poly_mul(acc, parse_factor());
      else
        break;
    }
    return acc;
  }

  Poly parse_expr() {
    skip_ws();
    int sign = 1;
    if (eat('+')) {
    } else if (eat('-')) {
      sign = -1;
    }
    Poly acc = parse_term();
    if (sign < 0) acc = poly_neg(acc);
    for (;;) {
      skip_ws();
      if (eat('+'))
        acc = poly_add(acc, parse_term());
      else if (eat('-'))
        acc = poly_sub(acc, parse_term());
      else
        break;
    }
    return acc;
  }
};

std::string coeff_str(const FpVec& c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (!c[i]) continue;
    std::string piece;
    if (i == 0) {
      piece = std::to_string(c[0]);
    } else {
      if (c[i] != 1) piece = std::to_string(c[i]) + "*";
      piece += "g";
      if (i > 1) piece += "^" + std::to_string(i);
    }
    if (!out.empty()) out += "+";
    out += piece;
  }
  return out.empty() ? "0" : out;
}

int coeff_nonzeros(const FpVec& c) {
  int nz = 0;
  for (auto v : c)
    if (v) ++nz;
  return nz;
}

FieldElement fe_pow_small(const AmbientField& F, const FieldElement& a,
                          std::uint32_t k) {
  FieldElement r = F.one();
  FieldElement b = a;
  while (k) {
    if (k & 1) r = F.mul(r, b);
    k >>= 1;
    if (k) b = F.mul(b, b);
  }
  return r;
}

}  // namespace

Poly zero_poly(const FieldSpec& fs, std::uint32_t nvars) {
  return Poly{fs, nvars, {}};
}

Poly const_poly(const FieldSpec& fs, std::uint32_t nvars, long value) {
  long p = fs.p;
  long v = ((value % p) + p) % p;
  Poly out{fs, nvars, {}};
  if (v)
    out.terms.push_back(Term{FpVec{static_cast<std::uint32_t>(v)},
                             std::vector<std::uint32_t>(nvars, 0)});
  return out;
}

Poly parse_poly(const std::string& src, std::uint32_t nvars,
                const FieldSpec& fs, long line) {
  Parser p{src, 0, line, fs, nvars};
  p.skip_ws();
  if (p.i >= src.size()) p.err(Err::Parse, "empty polynomial", p.i);
  Poly out = p.parse_expr();
  p.skip_ws();
  if (p.i != src.size())
    p.err(Err::Parse,
          std::string("unexpected character '") + src[p.i] + "'", p.i);
  return out;
}

std::string poly_to_string(const Poly& f) {
  if (f.terms.empty()) return "0";
  std::string out;
  for (const auto& t : f.terms) {
    std::string mono;
    for (std::uint32_t v = 0; v < f.nvars; ++v) {
      if (!t.exp[v]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(v + 1);
      if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
    }
    std::string piece;
    if (mono.empty()) {
      piece = coeff_str(t.coeff);
    } else if (t.coeff == FpVec{1}) {
      piece = mono;
    } else if (coeff_nonzeros(t.coeff) > 1) {
      piece = "(" + coeff_str(t.coeff) + ")*" + mono;
    } else {
      piece = coeff_str(t.coeff) + "*" + mono;
    }
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

bool poly_is_zero(const Poly& f) { return f.terms.empty(); }

long poly_total_degree(const Poly& f) {
  long best = -1;
  for (const auto& t : f.terms) {
    long d = 0;
    for (auto e : t.exp) d += e;
    best = std::max(best, d);
  }
  return best;
}

long poly_degree_in(const Poly& f, std::uint32_t var) {
  if (var >= f.nvars) fail(Err::InvalidArgument, "variable index out of range");
  long best = f.terms.empty() ? -1 : 0;
  for (const auto& t : f.terms)
    best = std::max(best, static_cast<long>(t.exp[var]));
  return best;
}

Poly poly_neg(const Poly& f) {
  Poly out = f;
  for (auto& t : out.terms) t.coeff = cneg(std::move(t.coeff), f.field.p);
  return out;
}

Poly poly_add(const Poly& f, const Poly& g) {
  check_compat(f, g);
  TermMap m;
  for (const auto& t : f.terms) accumulate(m, t.exp, t.coeff, f.field.p);
  for (const auto& t : g.terms) accumulate(m, t.exp, t.coeff, f.field.p);
  return from_map(f.field, f.nvars, std::move(m));
}

Poly poly_sub(const Poly& f, const Poly& g) { return poly_add(f, poly_neg(g)); }

Poly poly_mul(const Poly& f, const Poly& g) {
  check_compat(f, g);
  TermMap m;
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) {
      std::vector<std::uint32_t> e(f.nvars);
      for (std::uint32_t v = 0; v < f.nvars; ++v) e[v] = a.exp[v] + b.exp[v];
      accumulate(m, e, cmul(a.coeff, b.coeff, f.field), f.field.p);
    }
  return from_map(f.field, f.nvars, std::move(m));
}

Poly poly_pow(const Poly& f, std::uint32_t k) {
  Poly r = const_poly(f.field, f.nvars, 1);
  Poly b = f;
  while (k) {
    if (k & 1) r = poly_mul(r, b);
    k >>= 1;
    if (k) b = poly_mul(b, b);
  }
  return r;
}

AmbientPoly lift_poly(const Poly& f, const AmbientField& F) {
  const FieldSpec& s = F.spec();
  if (s.p != f.field.p || s.e != f.field.e ||
      s.base_modulus != f.field.base_modulus)
    fail(Err::DegreeMismatch, "ambient field built from a different base");
  AmbientPoly out;
  out.nvars = f.nvars;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms)
    out.terms.emplace_back(t.exp, F.embed_base(t.coeff));
  return out;
}

FieldElement eval_poly(const AmbientPoly& f, const AmbientField& F,
                       const std::vector<FieldElement>& point) {
  if (point.size() != f.nvars)
    fail(Err::DegreeMismatch, "point arity does not match polynomial");
  FieldElement acc = F.zero();
  for (const auto& [e, c] : f.terms) {
    FieldElement t = c;
    for (std::uint32_t v = 0; v < f.nvars; ++v)
      if (e[v]) t = F.mul(t, fe_pow_small(F, point[v], e[v]));
    acc = F.add(acc, t);
  }
  return acc;
}

AmbientPoly specialize_poly(const AmbientPoly& f, const AmbientField& F,
                            std::uint32_t var, const FieldElement& value) {
  if (var >= f.nvars) fail(Err::InvalidArgument, "variable index out of range");
  std::map<std::vector<std::uint32_t>, FieldElement, ExpOrder> m;
  for (const auto& [e, c] : f.terms) {
    FieldElement nc = c;
    if (e[var]) nc = F.mul(nc, fe_pow_small(F, value, e[var]));
    std::vector<std::uint32_t> ne = e;
    ne[var] = 0;
    auto it = m.find(ne);
    if (it == m.end())
      m.emplace(std::move(ne), std::move(nc));
    else
      it->second = F.add(it->second, nc);
  }
  AmbientPoly out;
  out.nvars = f.nvars;
  for (auto& [e, c] : m)
    if (!F.is_zero_span(c.c.data())) out.terms.emplace_back(e, c);
  return out;
}

}  // namespace pzeta
