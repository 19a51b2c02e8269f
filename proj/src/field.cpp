#include "growthlab/field.hpp"

#include <atomic>
#include <cassert>

namespace growthlab {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Err::FieldTooLarge: return "FieldTooLarge";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::RankTooSmall: return "RankTooSmall";
    case Err::CharacteristicTwoOrthogonal: return "CharacteristicTwoOrthogonal";
    case Err::UnsupportedFamily: return "UnsupportedFamily";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotInGroup: return "NotInGroup";
    case Err::NotInSL: return "NotInSL";
    case Err::OnSingularLocus: return "OnSingularLocus";
    case Err::GeneratorVerificationFailed: return "GeneratorVerificationFailed";
    case Err::NonMonic: return "NonMonic";
    case Err::NotRegularSemisimple: return "NotRegularSemisimple";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::NoEscapePossible: return "NoEscapePossible";
    case Err::BoundViolated: return "BoundViolated";
    case Err::NoRegularSemisimple: return "NoRegularSemisimple";
    case Err::NotGenerating: return "NotGenerating";
    case Err::RecurrenceViolated: return "RecurrenceViolated";
    case Err::OutOfRange: return "OutOfRange";
    case Err::InsufficientProfile: return "InsufficientProfile";
    case Err::ConfigInvalid: return "ConfigInvalid";
  }
  return "UnknownError";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::atomic<std::uint32_t> g_next_field_id{1};

// Polynomials over GF(p) as coefficient vectors c[0..deg], no leading zeros.
using PPoly = std::vector<std::uint64_t>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over GF(p), b nonzero.
PPoly pmod(PPoly a, const PPoly& b, std::uint64_t p) {
  ptrim(a);
  const std::size_t db = b.size() - 1;
  // b monic is all we need here
  while (a.size() >= b.size() && !a.empty()) {
    std::uint64_t c = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t t = (c * b[i]) % p;
      a[shift + i] = (a[shift + i] + p - t) % p;
    }
    ptrim(a);
  }
  return a;
}

// Monic polynomial of degree d whose non-leading part has code `code` (base p).
PPoly poly_from_code(std::uint64_t code, unsigned d, std::uint64_t p) {
  PPoly f(d + 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[d] = 1;
  return f;
}

bool divides(const PPoly& g, const PPoly& f, std::uint64_t p) {
  return pmod(f, g, p).empty();
}

// Irreducibility over GF(p) by trial division with all monic divisors of
// degree 1..deg/2. Desk scale: q <= 2^20 keeps this cheap.
bool poly_irreducible(const PPoly& f, std::uint64_t p) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 0) return false;
  if (d == 1) return true;
  for (unsigned e = 1; 2 * e <= d; ++e) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      PPoly g = poly_from_code(code, e, p);
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

Field Field::make(std::uint64_t p, unsigned k, std::uint64_t max_q) {
  if (!is_prime_u64(p)) fail(Err::NonPrimeCharacteristic, "p = " + std::to_string(p));
  if (k < 1) fail(Err::OutOfRange, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > max_q) fail(Err::FieldTooLarge, "p^k exceeds budget " + std::to_string(max_q));
  }
  std::vector<felem> modulus(k, 0);
  if (k > 1) {
    // scan the p^k non-leading parts in code order; the first irreducible wins
    bool found = false;
    for (std::uint64_t code = 0; code < q && !found; ++code) {
      PPoly f = poly_from_code(code, k, p);
      if (poly_irreducible(f, p)) {
        for (unsigned i = 0; i < k; ++i) modulus[i] = static_cast<felem>(f[i]);
        found = true;
      }
    }
    if (!found) fail(Err::OutOfRange, "no irreducible modulus found (internal)");
  }
  return make_with_modulus(p, std::move(modulus), max_q);
}

Field Field::make_with_modulus(std::uint64_t p, std::vector<felem> modulus, std::uint64_t max_q) {
  if (!is_prime_u64(p)) fail(Err::NonPrimeCharacteristic, "p = " + std::to_string(p));
  const unsigned k = static_cast<unsigned>(modulus.size());
  if (k < 1) fail(Err::OutOfRange, "modulus must have degree >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > max_q) fail(Err::FieldTooLarge, "p^k exceeds budget " + std::to_string(max_q));
  }
  if (k > 1) {
    PPoly f(k + 1, 0);
    for (unsigned i = 0; i < k; ++i) f[i] = modulus[i] % p;
    f[k] = 1;
    if (!poly_irreducible(f, p)) fail(Err::OutOfRange, "modulus is reducible over GF(p)");
  }
  Field fl;
  fl.p_ = p;
  fl.k_ = k;
  fl.q_ = q;
  fl.modulus_ = std::move(modulus);
  fl.id_ = g_next_field_id.fetch_add(1);
  fl.init_tables();
  return fl;
}

void Field::init_tables() {
  if (k_ == 1) return;
  // red_[i] = coefficients of x^{k+i} mod modulus, i = 0..k-2
  red_.assign(k_ - 1, std::vector<felem>(k_, 0));
  std::vector<felem> cur(k_, 0);
  // x^k = -modulus tail
  for (unsigned i = 0; i < k_; ++i) cur[i] = static_cast<felem>((p_ - modulus_[i] % p_) % p_);
  red_[0] = cur;
  for (unsigned i = 1; i + 1 < k_; ++i) {
    // multiply cur by x, reduce
    std::vector<felem> nxt(k_, 0);
    felem top = cur[k_ - 1];
    for (unsigned j = k_ - 1; j > 0; --j) nxt[j] = cur[j - 1];
    nxt[0] = 0;
    if (top != 0) {
      for (unsigned j = 0; j < k_; ++j) {
        std::uint64_t t = nxt[j] + static_cast<std::uint64_t>(top) * red_[0][j];
        nxt[j] = static_cast<felem>(t % p_);
      }
    }
    red_[i] = nxt;
    cur = nxt;
  }
}

std::string Field::label() const { return "GF(" + std::to_string(q_) + ")"; }

std::string Field::modulus_str() const {
  if (k_ == 1) return "x";
  std::string s = "x^" + std::to_string(k_);
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    if (modulus_[i] == 0) continue;
    s += " + ";
    if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
    if (i >= 1) s += (modulus_[i] != 1 ? "*x" : "x");
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

felem Field::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += static_cast<std::int64_t>(p_);
  return static_cast<felem>(m);
}

std::vector<felem> Field::decode(felem a) const {
  std::vector<felem> c(k_);
  std::uint64_t v = a;
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = static_cast<felem>(v % p_);
    v /= p_;
  }
  return c;
}

felem Field::encode(std::span<const felem> coeffs) const {
  if (coeffs.size() != k_) fail(Err::DimensionMismatch, "coefficient vector length");
  std::uint64_t v = 0;
  for (unsigned i = k_; i-- > 0;) v = v * p_ + coeffs[i] % p_;
  return static_cast<felem>(v);
}

felem Field::add(felem a, felem b) const {
  if (k_ == 1) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<felem>(s >= p_ ? s - p_ : s);
  }
  std::uint64_t va = a, vb = b, out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = va % p_ + vb % p_;
    if (s >= p_) s -= p_;
    out += s * mult;
    mult *= p_;
    va /= p_;
    vb /= p_;
  }
  return static_cast<felem>(out);
}

felem Field::neg(felem a) const {
  if (k_ == 1) return a == 0 ? 0 : static_cast<felem>(p_ - a);
  std::uint64_t va = a, out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t c = va % p_;
    out += (c == 0 ? 0 : p_ - c) * mult;
    mult *= p_;
    va /= p_;
  }
  return static_cast<felem>(out);
}

felem Field::sub(felem a, felem b) const { return add(a, neg(b)); }

felem Field::mul(felem a, felem b) const {
  if (k_ == 1) return static_cast<felem>((static_cast<std::uint64_t>(a) * b) % p_);
  // schoolbook product of coefficient vectors, then reduce by modulus rows
  std::uint64_t prod[64] = {0};  // k <= 20 for q <= 2^20
  std::uint64_t va = a;
  std::vector<std::uint64_t> ca(k_), cb(k_);
  for (unsigned i = 0; i < k_; ++i) {
    ca[i] = va % p_;
    va /= p_;
  }
  std::uint64_t vb = b;
  for (unsigned i = 0; i < k_; ++i) {
    cb[i] = vb % p_;
    vb /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] += ca[i] * cb[j];
  }
  std::uint64_t out[64];
  for (unsigned i = 0; i < k_; ++i) out[i] = prod[i] % p_;
  for (unsigned i = 0; i + 1 < k_; ++i) {
    std::uint64_t c = prod[k_ + i] % p_;
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) out[j] = (out[j] + c * red_[i][j]) % p_;
  }
  std::uint64_t enc = 0;
  for (unsigned i = k_; i-- > 0;) enc = enc * p_ + out[i];
  return static_cast<felem>(enc);
}

felem Field::pow(felem a, std::uint64_t e) const {
  felem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

felem Field::inv(felem a) const {
  if (a == 0) fail(Err::DivisionByZero, "inverse of zero in " + label());
  return pow(a, q_ - 2);
}

felem Field::div(felem a, felem b) const {
  if (b == 0) fail(Err::DivisionByZero, "division by zero in " + label());
  return mul(a, inv(b));
}

felem Field::frobenius(felem a, std::uint64_t e) const {
  e %= k_;  // Frobenius has order k on GF(p^k)
  std::uint64_t pe = 1;
  for (std::uint64_t i = 0; i < e; ++i) pe *= p_;
  return pow(a, pe);
}

bool Field::is_square(felem a) const {
  if (q_ % 2 == 0) fail(Err::EvenCharacteristic, "quadratic residues need odd q");
  if (a == 0) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

felem Field::quadratic_nonresidue() const {
  if (p_ == 2) fail(Err::EvenCharacteristic, "no quadratic nonresidue in characteristic 2");
  for (felem s = 1; s < q_; ++s)
    if (!is_square(s)) return s;
  fail(Err::OutOfRange, "no nonresidue found (internal)");
}

namespace {
void check_fid(const Field& f, FieldElem a, FieldElem b) {
  if (a.fid != f.id() || b.fid != f.id())
    fail(Err::FieldMismatch, "elements belong to different fields");
}
void check_fid(const Field& f, FieldElem a) {
  if (a.fid != f.id()) fail(Err::FieldMismatch, "element belongs to a different field");
}
}  // namespace

FieldElem fe_add(const Field& f, FieldElem a, FieldElem b) {
  check_fid(f, a, b);
  return tag(f, f.add(a.v, b.v));
}
FieldElem fe_sub(const Field& f, FieldElem a, FieldElem b) {
  check_fid(f, a, b);
  return tag(f, f.sub(a.v, b.v));
}
FieldElem fe_mul(const Field& f, FieldElem a, FieldElem b) {
  check_fid(f, a, b);
  return tag(f, f.mul(a.v, b.v));
}
FieldElem fe_div(const Field& f, FieldElem a, FieldElem b) {
  check_fid(f, a, b);
  return tag(f, f.div(a.v, b.v));
}
FieldElem fe_inv(const Field& f, FieldElem a) {
  check_fid(f, a);
  return tag(f, f.inv(a.v));
}
FieldElem fe_pow(const Field& f, FieldElem a, std::uint64_t e) {
  check_fid(f, a);
  return tag(f, f.pow(a.v, e));
}

}  // namespace growthlab
