#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "growthlab/error.hpp"

namespace growthlab {

// Canonical code of a field element: sum_i c_i p^i with all c_i in [0, p).
// The code doubles as the canonical ordering used for "least" choices.
using felem = std::uint32_t;

// GF(p^k) with a fixed monic irreducible modulus over GF(p).
// Immutable after construction; all operations are pure.
class Field {
 public:
  static constexpr std::uint64_t kDefaultMaxQ = 1u << 20;

  // Lexicographically-least monic irreducible modulus of degree k,
  // where polynomials are ordered by the code of their non-leading part.
  static Field make(std::uint64_t p, unsigned k, std::uint64_t max_q = kDefaultMaxQ);

  // Explicit modulus, given as coefficients c_0..c_{k-1} of x^k + sum c_i x^i.
  // Checked monic-irreducible by trial division.
  static Field make_with_modulus(std::uint64_t p, std::vector<felem> modulus,
                                 std::uint64_t max_q = kDefaultMaxQ);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  std::uint32_t id() const { return id_; }
  const std::vector<felem>& modulus() const { return modulus_; }
  std::string label() const;  // e.g. "GF(9)"
  std::string modulus_str() const;

  felem zero() const { return 0; }
  felem one() const { return 1; }
  // Integer reduced mod p (prime-field value embedded as a constant).
  felem from_int(std::int64_t v) const;

  felem add(felem a, felem b) const;
  felem sub(felem a, felem b) const;
  felem neg(felem a) const;
  felem mul(felem a, felem b) const;
  felem inv(felem a) const;  // DivisionByZero on 0
  felem div(felem a, felem b) const;
  felem pow(felem a, std::uint64_t e) const;
  felem frobenius(felem a, std::uint64_t e) const;  // a^(p^e)

  // Coefficient-vector view of the canonical encoding.
  std::vector<felem> decode(felem a) const;
  felem encode(std::span<const felem> coeffs) const;

  bool is_square(felem a) const;          // q odd
  felem quadratic_nonresidue() const;     // least nonresidue; EvenCharacteristic if p = 2

 private:
  Field() = default;
  void init_tables();

  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::uint32_t id_ = 0;
  std::vector<felem> modulus_;            // c_0..c_{k-1}
  std::vector<std::vector<felem>> red_;   // x^{k+i} mod modulus, i = 0..k-2
};

// Element tagged with its field, for the checked API surface.
struct FieldElem {
  felem v = 0;
  std::uint32_t fid = 0;
};

inline FieldElem tag(const Field& f, felem v) { return FieldElem{v, f.id()}; }

// Checked operations: verify both operands belong to `f`.
FieldElem fe_add(const Field& f, FieldElem a, FieldElem b);
FieldElem fe_sub(const Field& f, FieldElem a, FieldElem b);
FieldElem fe_mul(const Field& f, FieldElem a, FieldElem b);
FieldElem fe_div(const Field& f, FieldElem a, FieldElem b);
FieldElem fe_inv(const Field& f, FieldElem a);
FieldElem fe_pow(const Field& f, FieldElem a, std::uint64_t e);

bool is_prime_u64(std::uint64_t n);

}  // namespace growthlab
