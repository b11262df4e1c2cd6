#pragma once
// Exact integer / rational arithmetic.  Everything that must be exact runs on
// GMP; doubles only appear on the analytic side (root finding, RH weights).

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "pzeta/errors.hpp"

namespace pzeta {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(std::uint32_t base, std::uint64_t exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Int int_pow(const Int& base, std::uint64_t exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline std::string to_str(const Int& v) { return v.get_str(); }

inline std::string to_str(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// p-adic valuation of a nonzero integer.
inline unsigned long valuation(const Int& n, std::uint32_t p) {
  if (n == 0) fail(Err::InvalidArgument, "valuation of zero is infinite");
  Int rest;
  Int pz = p;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

}  // namespace pzeta
