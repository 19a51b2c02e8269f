#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "growthlab/field.hpp"
#include "growthlab/matrix.hpp"
#include "growthlab/quadext.hpp"

namespace growthlab {

// Sparse multivariate polynomial over a field. Terms are kept sorted by
// exponent vector, with no duplicates and no zero coefficients, so equal
// polynomials have equal representations.
class Poly {
 public:
  struct Term {
    std::vector<std::uint16_t> e;
    felem c = 0;
  };

  explicit Poly(unsigned nvars = 0) : nvars_(nvars) {}
  static Poly constant(unsigned nvars, felem c);
  static Poly variable(unsigned nvars, unsigned i);

  unsigned nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  Poly add(const Field& f, const Poly& o) const;
  Poly sub(const Field& f, const Poly& o) const;
  Poly neg(const Field& f) const;
  Poly mul(const Field& f, const Poly& o) const;
  Poly scalar_mul(const Field& f, felem c) const;

  felem eval(const Field& f, std::span<const felem> point) const;

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // plain-text sparse format: one "coefficient e_1 ... e_n" line per term
  std::string to_text() const;
  static Poly from_text(unsigned nvars, const std::string& text);

 private:
  unsigned nvars_ = 0;
  std::vector<Term> terms_;
};

felem poly_eval(const Field& f, const Poly& p, const Mat& m);  // row-major point

// Univariate polynomial, c[i] = coefficient of t^i.
struct UPoly {
  std::vector<felem> c;
  unsigned deg() const { return c.empty() ? 0 : static_cast<unsigned>(c.size() - 1); }
  bool operator==(const UPoly&) const = default;
};

// Characteristic polynomial det(tI - M), monic, by the division-free
// Berkowitz algorithm (valid in any characteristic).
UPoly char_poly(const Field& f, const Mat& m);

// Resultant-based discriminant of a monic P: (-1)^(m(m-1)/2) Res(P, P').
// The Sylvester matrix uses the formal degree m-1 for P'; if P' vanishes
// identically (possible in characteristic p) the discriminant is 0.
felem discriminant(const Field& f, const UPoly& p);

// Symbolic versions over the n^2 matrix entries x_0..x_{n^2-1} (row-major):
// coefficient polynomials of det(tI - X) for a generic matrix X.
std::vector<Poly> char_poly_symbolic(const Field& f, unsigned n);
// disc(char_poly(X)) as a single polynomial; total degree n(n-1).
Poly discriminant_symbolic(const Field& f, unsigned n);

// Variants reading the generic matrix entries through an affine map from
// `ambient_vars` variables: entry (i,j) is the polynomial entries[i*n+j].
std::vector<Poly> char_poly_symbolic_entries(const Field& f, unsigned n,
                                             const std::vector<Poly>& entries);
Poly discriminant_symbolic_entries(const Field& f, unsigned n, const std::vector<Poly>& entries);

// Polynomials with coefficients in GF(q)[z]/(z^2 - s), stored as component
// pairs a + b z. Used for the unitary family, whose natural matrix entries
// live in the quadratic extension.
struct PolyPair {
  Poly a, b;
};
std::vector<PolyPair> char_poly_symbolic_quad(const Field& f, felem s, unsigned n,
                                              const std::vector<PolyPair>& entries);
PolyPair discriminant_symbolic_quad(const Field& f, felem s, unsigned n,
                                    const std::vector<PolyPair>& entries);

// Numeric counterparts over the quadratic extension.
std::vector<QuadExt::Elem> char_poly_quad(const QuadExt& E, const std::vector<QuadExt::Elem>& m,
                                          unsigned n);
QuadExt::Elem discriminant_quad(const QuadExt& E, const std::vector<QuadExt::Elem>& p);

}  // namespace growthlab
