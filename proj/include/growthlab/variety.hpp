#pragma once

#include <functional>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/group.hpp"
#include "growthlab/poly.hpp"

namespace growthlab {

// A subvariety given by a polynomial system in the ambient matrix entries,
// plus declared dimension/degree metadata. The membership predicate is
// "all equations vanish"; `fast_member`, when set, must agree with it
// (cross-checked in tests) and exists because evaluating the expanded
// discriminant polynomial is much slower than recomputing it per point.
struct VarietySpec {
  std::string label;
  std::string provenance;  // where the declared (d, D) come from
  unsigned nvars = 0;
  std::vector<Poly> equations;
  unsigned dim_d = 0;
  BigInt deg_D = 1;
  std::function<bool(const Mat&)> fast_member;

  bool contains_point(const Field& f, const Mat& m) const;
  bool member(const Field& f, const Mat& m) const;
};

bool variety_contains(const GroupSpec& spec, const VarietySpec& v, const Mat& m);

// {e}: dimension 0, degree 1.
VarietySpec identity_variety(const GroupSpec& spec);

// Diagonal (split) maximal torus: dimension r, degree <= 2^r
// (<= r+1 for SL in its usual embedding).
VarietySpec diagonal_torus(const GroupSpec& spec);

// Locus of non-regular-semisimple elements: disc(char_poly(x)) = 0.
VarietySpec nonregular_locus(const GroupSpec& spec);

// Conjugacy-class closure of a regular semisimple g, via characteristic-
// polynomial equality. Dimension delta - r, degree <= n! * Delta_bound.
VarietySpec conjugacy_class_variety(const GroupSpec& spec, const Mat& g);

// Affine hyperplane sum coeffs[i] x_i + c = 0: dimension n^2 - 1, degree 1.
VarietySpec hyperplane_variety(const GroupSpec& spec, const std::vector<felem>& coeffs, felem c);

// Characteristic polynomial in the embedding-appropriate sense (the upper
// block for the contragredient SL embedding). Unitary specs are handled
// separately over the quadratic extension.
UPoly group_char_poly(const GroupSpec& spec, const Mat& m);

bool is_regular_semisimple(const GroupSpec& spec, const Mat& m);

}  // namespace growthlab
