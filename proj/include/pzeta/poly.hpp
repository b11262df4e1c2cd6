#pragma once
// Sparse multivariate polynomials over F_q = F_{p^e}, the input language for
// varieties.  Coefficients are F_q elements written as polynomials in the
// canonical generator g (F_p vectors of degree < e, reduced mod
// base_modulus).  Terms are kept merged and in canonical graded-lex order
// (total degree descending, ties broken by exponent vector with x1
// strongest), so structural equality is semantic equality.
//
// Grammar accepted by parse_poly:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' uint]
//   atom   := uint | 'x'uint | 'g' | '(' expr ')' | '-' atom
// The generator symbol g is only legal when e > 1.

#include <cstdint>
#include <string>
#include <vector>

#include "pzeta/ffield.hpp"

namespace pzeta {

struct Term {
  FpVec coeff;                      // nonzero, trimmed, deg < e
  std::vector<std::uint32_t> exp;   // length = nvars
  bool operator==(const Term&) const = default;
};

struct Poly {
  FieldSpec field;
  std::uint32_t nvars = 0;
  std::vector<Term> terms;
  bool operator==(const Poly& o) const {
    return field.p == o.field.p && field.e == o.field.e &&
           field.base_modulus == o.field.base_modulus && nvars == o.nvars &&
           terms == o.terms;
  }
};

Poly zero_poly(const FieldSpec& fs, std::uint32_t nvars);
Poly const_poly(const FieldSpec& fs, std::uint32_t nvars, long value);

// Throws Err::Parse / Err::UnknownVariable with 1-based positions; `line`
// seeds the reported line number so file-based callers can pass theirs.
Poly parse_poly(const std::string& src, std::uint32_t nvars,
                const FieldSpec& fs, long line = 1);

std::string poly_to_string(const Poly& f);

bool poly_is_zero(const Poly& f);
long poly_total_degree(const Poly& f);              // -1 for the zero poly
long poly_degree_in(const Poly& f, std::uint32_t var);  // 0-based var

Poly poly_neg(const Poly& f);
Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_mul(const Poly& f, const Poly& g);
Poly poly_pow(const Poly& f, std::uint32_t k);

// Polynomial with coefficients embedded into an ambient field.  Exponent
// vectors keep their arity under specialization (the slot is zeroed), so a
// fully specialized polynomial is a constant term.
struct AmbientPoly {
  std::uint32_t nvars = 0;
  std::vector<std::pair<std::vector<std::uint32_t>, FieldElement>> terms;
};

// F must have been built from the same FieldSpec as f.field.
AmbientPoly lift_poly(const Poly& f, const AmbientField& F);

FieldElement eval_poly(const AmbientPoly& f, const AmbientField& F,
                       const std::vector<FieldElement>& point);

// Substitute value for variable var (0-based) and merge terms.
AmbientPoly specialize_poly(const AmbientPoly& f, const AmbientField& F,
                            std::uint32_t var, const FieldElement& value);

}  // namespace pzeta
