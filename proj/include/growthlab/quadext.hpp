#pragma once

#include "growthlab/field.hpp"

namespace growthlab {

// GF(q^2) = GF(q)[z]/(z^2 - s), with s a fixed nonsquare of the base field.
// Elements are pairs (a, b) standing for a + b*z. Working on pairs avoids
// any tower-field machinery: q itself may be a prime power.
class QuadExt {
 public:
  struct Elem {
    felem a = 0, b = 0;
    bool operator==(const Elem&) const = default;
  };

  QuadExt(const Field& base, felem s) : f_(&base), s_(s) {
    if (base.is_square(s)) fail(Err::OutOfRange, "s must be a nonsquare of the base field");
  }

  const Field& base() const { return *f_; }
  felem s() const { return s_; }
  std::uint64_t q2() const { return f_->q() * f_->q(); }

  Elem zero() const { return {}; }
  Elem one() const { return {1, 0}; }
  Elem from_base(felem a) const { return {a, 0}; }
  Elem zeta() const { return {0, 1}; }

  Elem add(Elem x, Elem y) const { return {f_->add(x.a, y.a), f_->add(x.b, y.b)}; }
  Elem sub(Elem x, Elem y) const { return {f_->sub(x.a, y.a), f_->sub(x.b, y.b)}; }
  Elem neg(Elem x) const { return {f_->neg(x.a), f_->neg(x.b)}; }
  Elem mul(Elem x, Elem y) const {
    // (a + bz)(c + dz) = (ac + s bd) + (ad + bc) z
    felem ac = f_->mul(x.a, y.a), bd = f_->mul(x.b, y.b);
    felem ad = f_->mul(x.a, y.b), bc = f_->mul(x.b, y.a);
    return {f_->add(ac, f_->mul(s_, bd)), f_->add(ad, bc)};
  }
  // x^q = a - b z  (z^q = -z since s is a nonsquare)
  Elem conj(Elem x) const { return {x.a, f_->neg(x.b)}; }
  // Norm to the base field: x * conj(x) = a^2 - s b^2.
  felem norm(Elem x) const {
    return f_->sub(f_->mul(x.a, x.a), f_->mul(s_, f_->mul(x.b, x.b)));
  }
  Elem inv(Elem x) const {
    felem n = norm(x);
    if (n == 0) fail(Err::DivisionByZero, "inverse of zero in quadratic extension");
    felem ni = f_->inv(n);
    return {f_->mul(x.a, ni), f_->mul(f_->neg(x.b), ni)};
  }
  bool is_zero(Elem x) const { return x.a == 0 && x.b == 0; }

  Elem pow(Elem x, std::uint64_t e) const {
    Elem r = one(), b = x;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  // Code in [0, q^2), row for iteration and hashing.
  std::uint64_t code(Elem x) const { return static_cast<std::uint64_t>(x.b) * f_->q() + x.a; }
  Elem from_code(std::uint64_t c) const {
    return {static_cast<felem>(c % f_->q()), static_cast<felem>(c / f_->q())};
  }

 private:
  const Field* f_;
  felem s_;
};

}  // namespace growthlab
