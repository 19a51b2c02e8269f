#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/field.hpp"

namespace growthlab {

// Square matrix over a fixed field, entries in canonical codes, row-major.
// Value type: cheap to copy at desk scale, hashable bit-exactly.
struct Mat {
  std::uint16_t n = 0;
  std::uint32_t fid = 0;
  std::vector<felem> a;

  Mat() = default;
  Mat(const Field& f, unsigned n_) : n(static_cast<std::uint16_t>(n_)), fid(f.id()), a(n_ * n_, 0) {}

  felem& at(unsigned i, unsigned j) { return a[i * n + j]; }
  felem at(unsigned i, unsigned j) const { return a[i * n + j]; }

  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
};

Mat mat_identity(const Field& f, unsigned n);
Mat mat_mul(const Field& f, const Mat& x, const Mat& y);
Mat mat_add(const Field& f, const Mat& x, const Mat& y);
Mat mat_sub(const Field& f, const Mat& x, const Mat& y);
Mat mat_neg(const Field& f, const Mat& x);
Mat mat_transpose(const Mat& x);
felem mat_det(const Field& f, Mat x);                  // Gaussian elimination, exact
std::optional<Mat> mat_inverse(const Field& f, Mat x); // nullopt if singular
Mat mat_scalar_mul(const Field& f, felem c, const Mat& x);
bool mat_is_identity(const Mat& x);
std::string mat_str(const Field& f, const Mat& x);

// Fixed-width packed key for hashing/dedup in closures and censuses.
// Packs the canonical entry codes in row-major order; deterministic and
// platform-independent, which makes set semantics reproducible.
struct MatKey {
  std::array<std::uint64_t, 4> w{};
  bool operator==(const MatKey&) const = default;
};

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : k.w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Bits needed per entry for field f; throws BudgetExceeded if a full matrix
// does not fit the 256-bit key.
unsigned mat_key_bits(const Field& f, unsigned n);
MatKey mat_key(const Field& f, const Mat& x);

}  // namespace growthlab
