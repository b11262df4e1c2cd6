#pragma once
// Finite field towers F_p < F_q < F_{q^m} realised as explicit quotient rings
// F_p[x]/(F(x)).  Moduli are picked canonically: the monic irreducible of the
// right degree whose coefficient code sum_i c_i p^i is smallest.  Two
// independently built fields are therefore bit-identical, which is what makes
// frozen test values and cross-run reproducibility possible.
//
// Elements are dense little-endian coefficient vectors over F_p.  The hot
// entry points (add/mul/inv/Frobenius) also exist in a raw-span form working
// on caller-owned uint32_t buffers, so enumeration loops run allocation-free.
// An AmbientField is immutable after construction and safe to share across
// threads.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pzeta/errors.hpp"
#include "pzeta/rat.hpp"

namespace pzeta {

using FpVec = std::vector<std::uint32_t>;

bool is_prime_u32(std::uint32_t n);

// --- small F_p[x] toolkit on dense little-endian vectors ---

// Degree of an F_p coefficient vector; -1 for the zero polynomial.
int fp_degree(const FpVec& f);
void fp_trim(FpVec& f);
std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);  // a nonzero mod p
FpVec fp_mul(const FpVec& a, const FpVec& b, std::uint32_t p);
void fp_mod_inplace(FpVec& a, const FpVec& g, std::uint32_t p);
void fp_divmod(const FpVec& a, const FpVec& b, std::uint32_t p, FpVec& q,
               FpVec& rem);
FpVec fp_gcd(FpVec a, FpVec b, std::uint32_t p);  // monic

// Rabin's criterion: x^{p^n} == x (mod f) and gcd(x^{p^{n/l}} - x, f) = 1
// for every prime l dividing n = deg f.  Degree < 1 is never irreducible.
bool is_irreducible(const FpVec& f, std::uint32_t p);

// rank-th monic irreducible of the given degree, in ascending order of the
// integer code (rank 0 = smallest).  Throws InvalidArgument when fewer than
// rank+1 irreducibles of that degree exist.
FpVec smallest_irreducible(std::uint32_t p, std::uint32_t deg,
                           std::uint32_t rank = 0);

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  FpVec base_modulus;  // monic irreducible of degree e over F_p
};

// Canonical spec for F_q, q = p^e.
FieldSpec make_field_spec(std::uint32_t p, std::uint32_t e);

struct FieldElement {
  std::vector<std::uint32_t> c;  // length = ambient degree over F_p
  bool operator==(const FieldElement&) const = default;
};

std::size_t fe_hash(const FieldElement& a);

struct FEHash {
  std::size_t operator()(const FieldElement& a) const { return fe_hash(a); }
};

// F_p-linear endomorphism of the ambient field in its power basis.
struct FpLinearMap {
  std::uint32_t n = 0;
  std::uint32_t p = 2;
  std::vector<std::uint32_t> a;  // row-major n*n
  // out = M * in; aliasing allowed.
  void apply(const std::uint32_t* in, std::uint32_t* out) const;
};

struct FieldLimits {
  double max_log2_size = 62.0;  // refuse ambient fields above 2^62 elements
};

class AmbientField {
 public:
  // F_{q^m} for q = p^e described by spec.  modulus_rank selects the
  // rank-th smallest irreducible as ambient modulus instead of the smallest;
  // counts must not depend on it, which tests exploit.
  AmbientField(const FieldSpec& spec, std::uint32_t m,
               const FieldLimits& lim = {}, std::uint32_t modulus_rank = 0);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t e() const { return spec_.e; }
  std::uint32_t m() const { return m_; }
  std::uint32_t deg() const { return n_; }  // e*m, degree over F_p
  Int q() const { return ipow(spec_.p, spec_.e); }
  Int size() const { return ipow(spec_.p, n_); }
  // Size of F_{q^s} intersected with this field, i.e. q^gcd(s, m).
  Int subfield_size(std::uint32_t s) const;

  const FpVec& modulus() const { return mod_; }
  // Canonical root of spec.base_modulus inside this field: the root whose
  // coefficient code is smallest.  Generates F_q over F_p (zero when e = 1,
  // where base_modulus is x).
  const FieldElement& base_root() const { return base_root_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;  // image of an integer constant
  // Coefficient vector in the power basis; shorter vectors are padded.
  FieldElement from_coeffs(const FpVec& c) const;
  // Image of sum_i a_i g^i where g = base_root(); a has length <= e.
  FieldElement embed_base(const FpVec& a) const;

  // --- raw-span kernel ops; all spans hold deg() words, entries in [0,p) ---
  bool is_zero_span(const std::uint32_t* a) const;
  void add_span(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* r) const;
  void sub_span(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* r) const;
  void neg_span(const std::uint32_t* a, std::uint32_t* r) const;
  void scalar_mul_span(std::uint32_t c, const std::uint32_t* a,
                       std::uint32_t* r) const;
  void mul_span(const std::uint32_t* a, const std::uint32_t* b,
                std::uint32_t* r) const;  // aliasing allowed
  // False on zero input (r untouched), true otherwise.
  bool inv_span(const std::uint32_t* a, std::uint32_t* r) const;
  void pow_p_span(const std::uint32_t* a, std::uint32_t* r) const;  // a^p

  // --- value wrappers ---
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;  // throws on zero
  FieldElement pow(const FieldElement& a, const Int& k) const;  // k >= 0
  FieldElement frob_q(const FieldElement& a, std::uint32_t s) const;  // a^{q^s}

  // Matrix of a -> a^{q^s} = a^{p^{e s}} in the power basis.
  FpLinearMap frobenius_power(std::uint32_t s) const;
  bool in_subfield(const FieldElement& a, std::uint32_t s) const;
  // Hoisted form for loops: frob must be frobenius_power(s).
  bool in_subfield_span(const FpLinearMap& frob, const std::uint32_t* a) const;
  // F_p-basis of F_{q^s} inside this field (reduced echelon kernel basis,
  // deterministic).  Has e*gcd(s, m) elements.
  std::vector<FieldElement> subfield_basis(std::uint32_t s) const;

  static constexpr std::uint32_t kMaxDeg = 256;
  static constexpr std::uint32_t kMaxP = 1u << 20;  // keeps u64 accumulation safe

 private:
  void check_len(const FieldElement& a) const;
  FieldSpec spec_;
  std::uint32_t m_ = 1;
  std::uint32_t n_ = 1;
  FpVec mod_;                      // ambient modulus, monic degree n_
  std::vector<std::uint32_t> red_; // (n_-1) rows of n_: x^{n_+i} mod F
  FpLinearMap frobp_;              // a -> a^p
  FieldElement base_root_;
};

// Streams the F_p-span of the given elements in base-p odometer order
// (digit 0 fastest); the first element is 0 and each step costs O(deg).
class SpanEnumerator {
 public:
  SpanEnumerator(const AmbientField& F, const std::vector<FieldElement>& basis);
  Int size() const;  // p^dim
  const std::uint32_t* current() const { return cur_.data(); }
  FieldElement current_element() const { return FieldElement{cur_}; }
  bool advance();  // false once all p^dim elements have been visited
  void reset();

 private:
  const AmbientField* F_;
  std::vector<std::uint32_t> flat_;  // dim rows of deg() words
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> cur_;
};

}  // namespace pzeta
