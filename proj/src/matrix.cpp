#include "growthlab/matrix.hpp"

#include <bit>
#include <sstream>

namespace growthlab {

Mat mat_identity(const Field& f, unsigned n) {
  Mat m(f, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::DimensionMismatch, "matrix product");
  const unsigned n = x.n;
  Mat z(f, n);
  z.fid = x.fid;
  if (f.k() == 1) {
    // fast path: prime field, accumulate in 64 bits then reduce once
    const std::uint64_t p = f.p();
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (unsigned l = 0; l < n; ++l)
          acc += static_cast<std::uint64_t>(x.a[i * n + l]) * y.a[l * n + j];
        z.a[i * n + j] = static_cast<felem>(acc % p);
      }
    return z;
  }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      felem acc = 0;
      for (unsigned l = 0; l < n; ++l) acc = f.add(acc, f.mul(x.at(i, l), y.at(l, j)));
      z.at(i, j) = acc;
    }
  return z;
}

Mat mat_add(const Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::DimensionMismatch, "matrix sum");
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = f.add(z.a[i], y.a[i]);
  return z;
}

Mat mat_sub(const Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::DimensionMismatch, "matrix difference");
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = f.sub(z.a[i], y.a[i]);
  return z;
}

Mat mat_neg(const Field& f, const Mat& x) {
  Mat z = x;
  for (auto& v : z.a) v = f.neg(v);
  return z;
}

Mat mat_transpose(const Mat& x) {
  Mat z = x;
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j) z.a[j * x.n + i] = x.a[i * x.n + j];
  return z;
}

Mat mat_scalar_mul(const Field& f, felem c, const Mat& x) {
  Mat z = x;
  for (auto& v : z.a) v = f.mul(c, v);
  return z;
}

felem mat_det(const Field& f, Mat x) {
  const unsigned n = x.n;
  felem det = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && x.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) std::swap(x.at(piv, j), x.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, x.at(col, col));
    felem pinv = f.inv(x.at(col, col));
    for (unsigned i = col + 1; i < n; ++i) {
      if (x.at(i, col) == 0) continue;
      felem factor = f.mul(x.at(i, col), pinv);
      for (unsigned j = col; j < n; ++j)
        x.at(i, j) = f.sub(x.at(i, j), f.mul(factor, x.at(col, j)));
    }
  }
  return det;
}

std::optional<Mat> mat_inverse(const Field& f, Mat x) {
  const unsigned n = x.n;
  Mat inv = mat_identity(f, n);
  inv.fid = x.fid;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && x.at(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (unsigned j = 0; j < n; ++j) {
        std::swap(x.at(piv, j), x.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    felem pinv = f.inv(x.at(col, col));
    for (unsigned j = 0; j < n; ++j) {
      x.at(col, j) = f.mul(x.at(col, j), pinv);
      inv.at(col, j) = f.mul(inv.at(col, j), pinv);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || x.at(i, col) == 0) continue;
      felem factor = x.at(i, col);
      for (unsigned j = 0; j < n; ++j) {
        x.at(i, j) = f.sub(x.at(i, j), f.mul(factor, x.at(col, j)));
        inv.at(i, j) = f.sub(inv.at(i, j), f.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool mat_is_identity(const Mat& x) {
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j)
      if (x.at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string mat_str(const Field& f, const Mat& x) {
  (void)f;
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < x.n; ++i) {
    if (i) os << "; ";
    for (unsigned j = 0; j < x.n; ++j) {
      if (j) os << ",";
      os << x.at(i, j);
    }
  }
  os << "]";
  return os.str();
}

unsigned mat_key_bits(const Field& f, unsigned n) {
  unsigned bits = std::bit_width(f.q() - 1);
  if (bits == 0) bits = 1;
  if (static_cast<std::uint64_t>(bits) * n * n > 256)
    fail(Err::BudgetExceeded, "matrix too wide to pack into a 256-bit key");
  return bits;
}

MatKey mat_key(const Field& f, const Mat& x) {
  const unsigned bits = mat_key_bits(f, x.n);
  MatKey k;
  unsigned word = 0, off = 0;
  for (felem v : x.a) {
    std::uint64_t val = v;
    k.w[word] |= val << off;
    unsigned used = 64 - off;
    if (bits > used) k.w[word + 1] |= val >> used;
    off += bits;
    if (off >= 64) {
      off -= 64;
      ++word;
    }
  }
  return k;
}

}  // namespace growthlab
