#include "growthlab/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace growthlab {

Poly Poly::constant(unsigned nvars, felem c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({std::vector<std::uint16_t>(nvars, 0), c});
  return p;
}

Poly Poly::variable(unsigned nvars, unsigned i) {
  Poly p(nvars);
  std::vector<std::uint16_t> e(nvars, 0);
  e[i] = 1;
  p.terms_.push_back({std::move(e), 1});
  return p;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (auto x : t.e) s += x;
    d = std::max(d, s);
  }
  return d;
}

namespace {
bool exp_less(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}
}  // namespace

Poly Poly::add(const Field& f, const Poly& o) const {
  if (nvars_ != o.nvars_) fail(Err::DimensionMismatch, "polynomial variable counts differ");
  Poly out(nvars_);
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && exp_less(terms_[i].e, o.terms_[j].e))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || exp_less(o.terms_[j].e, terms_[i].e)) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      felem c = f.add(terms_[i].c, o.terms_[j].c);
      if (c != 0) out.terms_.push_back({terms_[i].e, c});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly Poly::neg(const Field& f) const {
  Poly out = *this;
  for (auto& t : out.terms_) t.c = f.neg(t.c);
  return out;
}

Poly Poly::sub(const Field& f, const Poly& o) const { return add(f, o.neg(f)); }

Poly Poly::scalar_mul(const Field& f, felem c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.c = f.mul(t.c, c);
  return out;
}

Poly Poly::mul(const Field& f, const Poly& o) const {
  if (nvars_ != o.nvars_) fail(Err::DimensionMismatch, "polynomial variable counts differ");
  // fast path: exponents pack into one 64-bit key (4 bits per variable)
  bool packable = nvars_ <= 16 && total_degree() + o.total_degree() < 16;
  if (packable) {
    auto pack = [&](const std::vector<std::uint16_t>& e) {
      std::uint64_t k = 0;
      for (unsigned v = 0; v < nvars_; ++v) k |= static_cast<std::uint64_t>(e[v]) << (4 * v);
      return k;
    };
    std::unordered_map<std::uint64_t, felem> acc;
    acc.reserve(terms_.size() * o.terms_.size() / 2 + 8);
    for (const auto& a : terms_) {
      std::uint64_t ka = pack(a.e);
      for (const auto& b : o.terms_) {
        std::uint64_t k = ka + pack(b.e);  // disjoint nibbles, no carry by the degree bound
        felem add = f.mul(a.c, b.c);
        auto [it, fresh] = acc.try_emplace(k, add);
        if (!fresh) it->second = f.add(it->second, add);
      }
    }
    std::map<std::vector<std::uint16_t>, felem> sorted;
    for (auto [k, c] : acc) {
      if (c == 0) continue;
      std::vector<std::uint16_t> e(nvars_);
      for (unsigned v = 0; v < nvars_; ++v) e[v] = static_cast<std::uint16_t>((k >> (4 * v)) & 0xF);
      sorted.emplace(std::move(e), c);
    }
    Poly out(nvars_);
    for (auto& [e, c] : sorted) out.terms_.push_back({e, c});
    return out;
  }
  std::map<std::vector<std::uint16_t>, felem> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::vector<std::uint16_t> e(nvars_);
      for (unsigned v = 0; v < nvars_; ++v)
        e[v] = static_cast<std::uint16_t>(a.e[v] + b.e[v]);
      auto it = acc.find(e);
      felem add = f.mul(a.c, b.c);
      if (it == acc.end()) {
        if (add != 0) acc.emplace(std::move(e), add);
      } else {
        it->second = f.add(it->second, add);
        if (it->second == 0) acc.erase(it);
      }
    }
  Poly out(nvars_);
  for (auto& [e, c] : acc) out.terms_.push_back({e, c});
  return out;
}

felem Poly::eval(const Field& f, std::span<const felem> point) const {
  if (point.size() != nvars_) fail(Err::DimensionMismatch, "evaluation point size");
  felem total = 0;
  for (const auto& t : terms_) {
    felem v = t.c;
    for (unsigned i = 0; i < nvars_; ++i) {
      if (t.e[i] == 0) continue;
      v = f.mul(v, f.pow(point[i], t.e[i]));
      if (v == 0) break;
    }
    total = f.add(total, v);
  }
  return total;
}

std::string Poly::to_text() const {
  std::ostringstream os;
  for (const auto& t : terms_) {
    os << t.c;
    for (auto e : t.e) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

Poly Poly::from_text(unsigned nvars, const std::string& text) {
  Poly p(nvars);
  std::istringstream is(text);
  std::string line;
  std::map<std::vector<std::uint16_t>, felem> acc;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t c;
    if (!(ls >> c)) fail(Err::ConfigInvalid, "bad polynomial line: " + line);
    std::vector<std::uint16_t> e(nvars, 0);
    for (unsigned i = 0; i < nvars; ++i) {
      std::uint32_t x;
      if (!(ls >> x)) fail(Err::ConfigInvalid, "bad exponent vector: " + line);
      e[i] = static_cast<std::uint16_t>(x);
    }
    acc[e] = static_cast<felem>(c);
  }
  for (auto& [e, c] : acc)
    if (c != 0) p.terms_.push_back({e, c});
  return p;
}

felem poly_eval(const Field& f, const Poly& p, const Mat& m) {
  return p.eval(f, std::span<const felem>(m.a.data(), m.a.size()));
}

// ---------------------------------------------------------------------------
// Berkowitz characteristic polynomial, generic over a commutative ring.

namespace {

template <class Ring>
struct RingMat {
  using E = typename Ring::E;
  unsigned n;
  std::vector<E> a;
  const E& at(unsigned i, unsigned j) const { return a[i * n + j]; }
};

// Coefficients of det(tI - A), index i = coefficient of t^i.
template <class Ring>
std::vector<typename Ring::E> berkowitz(Ring& R, const RingMat<Ring>& A) {
  using E = typename Ring::E;
  const unsigned n = A.n;
  // c holds the char poly of the leading principal r x r minor,
  // highest coefficient first: c[0] t^r + c[1] t^(r-1) + ...
  std::vector<E> c{R.one(), R.neg(A.at(0, 0))};
  for (unsigned r = 1; r < n; ++r) {
    // Toeplitz column: (1, -a, -(RS), -(R M S), ..., -(R M^{r-1} S))
    std::vector<E> col(r + 2);
    col[0] = R.one();
    col[1] = R.neg(A.at(r, r));
    // row vector R_ = A[r][0..r-1], column S = A[0..r-1][r]
    std::vector<E> vec(r);  // M^j S
    for (unsigned i = 0; i < r; ++i) vec[i] = A.at(i, r);
    for (unsigned j = 0; j + 2 <= r + 1; ++j) {
      // dot R_ . vec
      E dot = R.zero();
      for (unsigned i = 0; i < r; ++i) dot = R.add(dot, R.mul(A.at(r, i), vec[i]));
      col[j + 2] = R.neg(dot);
      if (j + 3 <= r + 1) {
        // vec = M vec with M the r x r principal minor
        std::vector<E> nv(r, R.zero());
        for (unsigned i = 0; i < r; ++i)
          for (unsigned l = 0; l < r; ++l) nv[i] = R.add(nv[i], R.mul(A.at(i, l), vec[l]));
        vec.swap(nv);
      }
    }
    // c_new = Toeplitz(col) * c, sizes (r+2) x (r+1) times (r+1)
    std::vector<E> nc(r + 2, R.zero());
    for (unsigned i = 0; i < r + 2; ++i)
      for (unsigned j = 0; j < static_cast<unsigned>(c.size()); ++j) {
        if (i < j) continue;
        unsigned k = i - j;
        if (k >= col.size()) continue;
        nc[i] = R.add(nc[i], R.mul(col[k], c[j]));
      }
    c.swap(nc);
  }
  // reverse into coefficient-of-t^i order
  std::vector<E> out(n + 1, R.zero());
  for (unsigned i = 0; i <= n; ++i) out[n - i] = c[i];
  return out;
}

struct FeRing {
  using E = felem;
  const Field* f;
  E zero() const { return 0; }
  E one() const { return 1; }
  E scalar(felem c) const { return c; }
  E add(E a, E b) const { return f->add(a, b); }
  E mul(E a, E b) const { return f->mul(a, b); }
  E neg(E a) const { return f->neg(a); }
  bool is_zero(E a) const { return a == 0; }
};

struct PolyRing {
  using E = Poly;
  const Field* f;
  unsigned nvars;
  E zero() const { return Poly(nvars); }
  E one() const { return Poly::constant(nvars, 1); }
  E scalar(felem c) const { return Poly::constant(nvars, c); }
  E add(const E& a, const E& b) const { return a.add(*f, b); }
  E mul(const E& a, const E& b) const { return a.mul(*f, b); }
  E neg(const E& a) const { return a.neg(*f); }
  bool is_zero(const E& a) const { return a.is_zero(); }
};

// Determinant over a commutative ring by cofactor expansion; fine for the
// small Sylvester matrices that arise here. Expands along the column with
// the most zeros.
template <class Ring>
typename Ring::E ring_det(Ring& R, std::vector<typename Ring::E> m, unsigned n) {
  using E = typename Ring::E;
  if (n == 0) return R.one();
  if (n == 1) return m[0];
  // choose best column
  unsigned best = 0, bestz = 0;
  for (unsigned j = 0; j < n; ++j) {
    unsigned z = 0;
    for (unsigned i = 0; i < n; ++i)
      if (R.is_zero(m[i * n + j])) ++z;
    if (z > bestz) {
      bestz = z;
      best = j;
    }
  }
  E total = R.zero();
  for (unsigned i = 0; i < n; ++i) {
    const E& piv = m[i * n + best];
    if (R.is_zero(piv)) continue;
    std::vector<E> sub;
    sub.reserve((n - 1) * (n - 1));
    for (unsigned a = 0; a < n; ++a) {
      if (a == i) continue;
      for (unsigned b = 0; b < n; ++b) {
        if (b == best) continue;
        sub.push_back(m[a * n + b]);
      }
    }
    E minor = ring_det(R, std::move(sub), n - 1);
    E term = R.mul(piv, minor);
    if ((i + best) % 2 == 1) term = R.neg(term);
    total = R.add(total, term);
  }
  return total;
}

// Sylvester-resultant discriminant for a monic polynomial with coefficients
// in a ring: disc = (-1)^(m(m-1)/2) Res(P, P'), P' at formal degree m-1.
template <class Ring>
typename Ring::E ring_discriminant(Ring& R, const std::vector<typename Ring::E>& P,
                                   const Field& f) {
  using E = typename Ring::E;
  const unsigned m = static_cast<unsigned>(P.size() - 1);
  if (m == 0) fail(Err::OutOfRange, "discriminant of a constant");
  // formal derivative, coefficients of degree 0..m-1
  std::vector<E> D(m, R.zero());
  bool dzero = true;
  for (unsigned i = 1; i <= m; ++i) {
    felem k = f.from_int(static_cast<std::int64_t>(i));
    E c = R.mul(P[i], R.scalar(k));
    D[i - 1] = c;
    if (!R.is_zero(c)) dzero = false;
  }
  if (dzero) return R.zero();
  const unsigned s = 2 * m - 1;
  std::vector<E> syl(static_cast<std::size_t>(s) * s, R.zero());
  // m-1 rows of P (degree m), shifted
  for (unsigned r = 0; r + 1 < m; ++r)
    for (unsigned i = 0; i <= m; ++i) syl[r * s + (r + i)] = P[m - i];
  // m rows of P' at formal degree m-1
  for (unsigned r = 0; r < m; ++r)
    for (unsigned i = 0; i < m; ++i) syl[(m - 1 + r) * s + (r + i)] = D[m - 1 - i];
  E res = ring_det(R, std::move(syl), s);
  if ((static_cast<std::uint64_t>(m) * (m - 1) / 2) % 2 == 1) res = R.neg(res);
  return res;
}

}  // namespace

UPoly char_poly(const Field& f, const Mat& m) {
  FeRing R{&f};
  RingMat<FeRing> A{m.n, m.a};
  UPoly p;
  p.c = berkowitz(R, A);
  return p;
}

felem discriminant(const Field& f, const UPoly& p) {
  if (p.c.empty() || p.c.back() != 1) fail(Err::NonMonic, "discriminant needs a monic input");
  FeRing R{&f};
  return ring_discriminant(R, p.c, f);
}

Poly discriminant_symbolic(const Field& f, unsigned n) {
  std::vector<Poly> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n * n; ++i) entries.push_back(Poly::variable(n * n, i));
  return discriminant_symbolic_entries(f, n, entries);
}

Poly discriminant_symbolic_entries(const Field& f, unsigned n, const std::vector<Poly>& entries) {
  std::vector<Poly> cp = char_poly_symbolic_entries(f, n, entries);
  PolyRing R{&f, entries.empty() ? 0 : entries[0].nvars()};
  return ring_discriminant(R, cp, f);
}

namespace {

struct QPolyRing {
  using E = PolyPair;
  const Field* f;
  felem s;
  unsigned nvars;
  E zero() const { return {Poly(nvars), Poly(nvars)}; }
  E one() const { return {Poly::constant(nvars, 1), Poly(nvars)}; }
  E scalar(felem c) const { return {Poly::constant(nvars, c), Poly(nvars)}; }
  E add(const E& x, const E& y) const { return {x.a.add(*f, y.a), x.b.add(*f, y.b)}; }
  E mul(const E& x, const E& y) const {
    Poly ac = x.a.mul(*f, y.a), bd = x.b.mul(*f, y.b);
    Poly ad = x.a.mul(*f, y.b), bc = x.b.mul(*f, y.a);
    return {ac.add(*f, bd.scalar_mul(*f, s)), ad.add(*f, bc)};
  }
  E neg(const E& x) const { return {x.a.neg(*f), x.b.neg(*f)}; }
  bool is_zero(const E& x) const { return x.a.is_zero() && x.b.is_zero(); }
};

struct QERing {
  using E = QuadExt::Elem;
  const QuadExt* ext;
  E zero() const { return ext->zero(); }
  E one() const { return ext->one(); }
  E scalar(felem c) const { return ext->from_base(c); }
  E add(E x, E y) const { return ext->add(x, y); }
  E mul(E x, E y) const { return ext->mul(x, y); }
  E neg(E x) const { return ext->neg(x); }
  bool is_zero(E x) const { return ext->is_zero(x); }
};

}  // namespace

std::vector<PolyPair> char_poly_symbolic_quad(const Field& f, felem s, unsigned n,
                                              const std::vector<PolyPair>& entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    fail(Err::DimensionMismatch, "entry polynomial count");
  QPolyRing R{&f, s, entries.empty() ? 0 : entries[0].a.nvars()};
  RingMat<QPolyRing> A{n, entries};
  return berkowitz(R, A);
}

PolyPair discriminant_symbolic_quad(const Field& f, felem s, unsigned n,
                                    const std::vector<PolyPair>& entries) {
  std::vector<PolyPair> cp = char_poly_symbolic_quad(f, s, n, entries);
  QPolyRing R{&f, s, entries.empty() ? 0 : entries[0].a.nvars()};
  return ring_discriminant(R, cp, f);
}

std::vector<QuadExt::Elem> char_poly_quad(const QuadExt& E, const std::vector<QuadExt::Elem>& m,
                                          unsigned n) {
  QERing R{&E};
  RingMat<QERing> A{n, m};
  return berkowitz(R, A);
}

QuadExt::Elem discriminant_quad(const QuadExt& E, const std::vector<QuadExt::Elem>& p) {
  if (p.empty() || !(p.back() == E.one())) fail(Err::NonMonic, "discriminant needs a monic input");
  QERing R{&E};
  return ring_discriminant(R, p, E.base());
}

std::vector<Poly> char_poly_symbolic(const Field& f, unsigned n) {
  std::vector<Poly> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n * n; ++i) entries.push_back(Poly::variable(n * n, i));
  return char_poly_symbolic_entries(f, n, entries);
}

std::vector<Poly> char_poly_symbolic_entries(const Field& f, unsigned n,
                                             const std::vector<Poly>& entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    fail(Err::DimensionMismatch, "entry polynomial count");
  PolyRing R{&f, entries.empty() ? 0 : entries[0].nvars()};
  RingMat<PolyRing> A{n, entries};
  return berkowitz(R, A);
}

}  // namespace growthlab
