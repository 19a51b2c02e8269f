#include "growthlab/group.hpp"

#include <algorithm>
#include <cassert>

namespace growthlab {

const char* family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::Sp: return "Sp";
    case Family::SOOdd: return "SO_odd";
    case Family::SOEvenPlus: return "SO_even_plus";
    case Family::SUTwisted: return "SU_twisted";
  }
  return "?";
}

std::string GroupSpec::label() const {
  std::string s;
  switch (family) {
    case Family::SL: s = "SL" + std::to_string(rank + 1); break;
    case Family::Sp: s = "Sp" + std::to_string(2 * rank); break;
    case Family::SOOdd: s = "SO" + std::to_string(2 * rank + 1); break;
    case Family::SOEvenPlus: s = "SO+" + std::to_string(2 * rank); break;
    case Family::SUTwisted: s = "SU" + std::to_string(su_n); break;
  }
  s += "(" + std::to_string(field.q()) + ")";
  if (family == Family::SL && embedding == Embedding::BlockContragredient) s += "[block]";
  return s;
}

namespace {

Mat form_matrix(Family fam, unsigned r, const Field& f) {
  switch (fam) {
    case Family::SOEvenPlus: {
      Mat m(f, 2 * r);
      for (unsigned i = 0; i < r; ++i) {
        m.at(i, r + i) = 1;
        m.at(r + i, i) = 1;
      }
      return m;
    }
    case Family::SOOdd: {
      Mat m(f, 2 * r + 1);
      for (unsigned i = 0; i < r; ++i) {
        m.at(i, r + i) = 1;
        m.at(r + i, i) = 1;
      }
      m.at(2 * r, 2 * r) = 1;
      return m;
    }
    case Family::Sp: {
      Mat m(f, 2 * r);
      for (unsigned i = 0; i < r; ++i) {
        m.at(i, r + i) = 1;
        m.at(r + i, i) = f.neg(1);
      }
      return m;
    }
    default: return Mat{};
  }
}

}  // namespace

GroupSpec make_group(Family family, unsigned rank, const Field& field, Embedding embedding,
                     bool relax_rank) {
  GroupSpec s;
  s.family = family;
  s.rank = rank;
  s.field = field;
  s.embedding = embedding;
  if (embedding == Embedding::BlockContragredient && family != Family::SL)
    fail(Err::UnsupportedFamily, "block contragredient embedding applies to SL only");
  switch (family) {
    case Family::SL: {
      if (rank < 1) fail(Err::RankTooSmall, "SL needs rank >= 1");
      unsigned nu = rank + 1;
      s.n = embedding == Embedding::Usual ? nu : 2 * nu;
      s.dim = rank * rank + 2 * rank;
      s.iota = embedding == Embedding::Usual ? nu - 1 : 1;
      s.delta_bound = embedding == Embedding::Usual
                          ? BigInt(nu)
                          : big_pow(2, static_cast<std::uint64_t>(s.n) * s.n) * s.n;
      break;
    }
    case Family::Sp: {
      if (rank < (relax_rank ? 1u : 2u)) fail(Err::RankTooSmall, "Sp needs rank >= 2");
      s.n = 2 * rank;
      s.dim = 2 * rank * rank + rank;
      s.iota = 1;
      s.delta_bound = big_pow(2, static_cast<std::uint64_t>(s.n) * s.n) * s.n;
      s.form = form_matrix(family, rank, field);
      break;
    }
    case Family::SOOdd: {
      if (field.p() == 2) fail(Err::CharacteristicTwoOrthogonal, "SO needs odd q");
      if (rank < (relax_rank ? 1u : 3u)) fail(Err::RankTooSmall, "SO_odd needs rank >= 3");
      s.n = 2 * rank + 1;
      s.dim = 2 * rank * rank + rank;
      s.iota = 1;
      s.delta_bound = big_pow(2, static_cast<std::uint64_t>(s.n) * s.n) * s.n;
      s.form = form_matrix(family, rank, field);
      break;
    }
    case Family::SOEvenPlus: {
      if (field.p() == 2) fail(Err::CharacteristicTwoOrthogonal, "SO needs odd q");
      if (rank < (relax_rank ? 1u : 4u)) fail(Err::RankTooSmall, "SO_even_plus needs rank >= 4");
      s.n = 2 * rank;
      s.dim = 2 * rank * rank - rank;
      s.iota = 1;
      s.delta_bound = big_pow(2, static_cast<std::uint64_t>(s.n) * s.n) * s.n;
      s.form = form_matrix(family, rank, field);
      break;
    }
    case Family::SUTwisted: return su_embed(rank + 1, field);
  }
  return s;
}

GroupSpec su_embed(unsigned n, const Field& field) {
  if (field.p() == 2) fail(Err::EvenCharacteristic, "the unitary twist here needs odd q");
  if (n < 2) fail(Err::RankTooSmall, "SU needs n >= 2");
  GroupSpec s;
  s.family = Family::SUTwisted;
  s.rank = n - 1;
  s.field = field;
  s.embedding = Embedding::Usual;
  s.su_n = n;
  s.n = 2 * n;
  s.dim = n * n - 1;
  s.iota = 1;  // x^-1 = tau(x)^T is linear in the entries
  s.delta_bound = big_pow(2, static_cast<std::uint64_t>(s.n) * s.n) * s.n;
  s.su_s = field.quadratic_nonresidue();
  return s;
}

QuadExt su_ext(const GroupSpec& spec) {
  if (spec.family != Family::SUTwisted) fail(Err::UnsupportedFamily, "not a unitary spec");
  return QuadExt(spec.field, spec.su_s);
}

Mat su_phi(const GroupSpec& spec, const QMat& g) {
  const unsigned n = spec.su_n;
  if (g.size() != static_cast<std::size_t>(n) * n) fail(Err::DimensionMismatch, "su_phi");
  const Field& f = spec.field;
  Mat m(f, 2 * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      QuadExt::Elem e = g[i * n + j];
      m.at(2 * i, 2 * j) = e.a;
      m.at(2 * i, 2 * j + 1) = f.mul(spec.su_s, e.b);
      m.at(2 * i + 1, 2 * j) = e.b;
      m.at(2 * i + 1, 2 * j + 1) = e.a;
    }
  return m;
}

std::optional<QMat> su_lift(const GroupSpec& spec, const Mat& m) {
  const unsigned n = spec.su_n;
  const Field& f = spec.field;
  if (m.n != 2 * n) fail(Err::DimensionMismatch, "su_lift");
  QMat g(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      felem a = m.at(2 * i, 2 * j);
      felem b = m.at(2 * i + 1, 2 * j);
      if (m.at(2 * i + 1, 2 * j + 1) != a) return std::nullopt;
      if (m.at(2 * i, 2 * j + 1) != f.mul(spec.su_s, b)) return std::nullopt;
      g[i * n + j] = {a, b};
    }
  return g;
}

namespace {

QuadExt::Elem qmat_det(const QuadExt& E, QMat x, unsigned n) {
  QuadExt::Elem det = E.one();
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && E.is_zero(x[piv * n + col])) ++piv;
    if (piv == n) return E.zero();
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) std::swap(x[piv * n + j], x[col * n + j]);
      det = E.neg(det);
    }
    det = E.mul(det, x[col * n + col]);
    QuadExt::Elem pinv = E.inv(x[col * n + col]);
    for (unsigned i = col + 1; i < n; ++i) {
      if (E.is_zero(x[i * n + col])) continue;
      QuadExt::Elem factor = E.mul(x[i * n + col], pinv);
      for (unsigned j = col; j < n; ++j)
        x[i * n + j] = E.sub(x[i * n + j], E.mul(factor, x[col * n + j]));
    }
  }
  return det;
}

QMat qmat_mul(const QuadExt& E, const QMat& x, const QMat& y, unsigned n) {
  QMat z(static_cast<std::size_t>(n) * n, E.zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      QuadExt::Elem acc = E.zero();
      for (unsigned l = 0; l < n; ++l) acc = E.add(acc, E.mul(x[i * n + l], y[l * n + j]));
      z[i * n + j] = acc;
    }
  return z;
}

QMat qmat_conj_transpose(const QuadExt& E, const QMat& x, unsigned n) {
  QMat z(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) z[j * n + i] = E.conj(x[i * n + j]);
  return z;
}

bool qmat_is_identity(const QuadExt& E, const QMat& x, unsigned n) {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      QuadExt::Elem want = i == j ? E.one() : E.zero();
      if (!(x[i * n + j] == want)) return false;
    }
  return true;
}

bool block_sl_split(const GroupSpec& spec, const Mat& m, Mat& x1, Mat& x2) {
  const unsigned h = spec.n / 2;
  const Field& f = spec.field;
  x1 = Mat(f, h);
  x2 = Mat(f, h);
  for (unsigned i = 0; i < h; ++i)
    for (unsigned j = 0; j < h; ++j) {
      x1.at(i, j) = m.at(i, j);
      x2.at(i, j) = m.at(h + i, h + j);
      if (m.at(i, h + j) != 0 || m.at(h + i, j) != 0) return false;
    }
  return true;
}

}  // namespace

bool contains(const GroupSpec& spec, const Mat& m) {
  if (m.n != spec.n) fail(Err::DimensionMismatch, "contains: ambient size");
  if (m.fid != 0 && m.fid != spec.field.id())
    fail(Err::FieldMismatch, "contains: element from a different field");
  const Field& f = spec.field;
  switch (spec.family) {
    case Family::SL: {
      if (spec.embedding == Embedding::Usual) return mat_det(f, m) == 1;
      Mat x1, x2;
      if (!block_sl_split(spec, m, x1, x2)) return false;
      if (mat_det(f, x1) != 1) return false;
      return mat_is_identity(mat_mul(f, x1, mat_transpose(x2)));
    }
    case Family::Sp: {
      Mat lhs = mat_mul(f, mat_mul(f, mat_transpose(m), spec.form), m);
      return lhs == spec.form;
    }
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      Mat lhs = mat_mul(f, mat_mul(f, mat_transpose(m), spec.form), m);
      if (!(lhs == spec.form)) return false;
      return mat_det(f, m) == 1;
    }
    case Family::SUTwisted: {
      auto g = su_lift(spec, m);
      if (!g) return false;
      QuadExt E = su_ext(spec);
      const unsigned n = spec.su_n;
      if (!(qmat_det(E, *g, n) == E.one())) return false;
      return qmat_is_identity(E, qmat_mul(E, qmat_conj_transpose(E, *g, n), *g, n), n);
    }
  }
  return false;
}

BigInt group_order(const GroupSpec& spec) {
  const BigInt q = spec.field.q();
  const unsigned r = spec.rank;
  switch (spec.family) {
    case Family::SL: {
      unsigned n = r + 1;
      BigInt o = big_pow(q, static_cast<std::uint64_t>(n) * (n - 1) / 2);
      for (unsigned i = 2; i <= n; ++i) o *= big_pow(q, i) - 1;
      return o;
    }
    case Family::Sp:
    case Family::SOOdd: {
      BigInt o = big_pow(q, static_cast<std::uint64_t>(r) * r);
      for (unsigned i = 1; i <= r; ++i) o *= big_pow(q, 2 * i) - 1;
      return o;
    }
    case Family::SOEvenPlus: {
      BigInt o = big_pow(q, static_cast<std::uint64_t>(r) * (r - 1));
      o *= big_pow(q, r) - 1;
      for (unsigned i = 1; i + 1 <= r; ++i) o *= big_pow(q, 2 * i) - 1;
      return o;
    }
    case Family::SUTwisted: {
      unsigned n = spec.su_n;
      BigInt o = big_pow(q, static_cast<std::uint64_t>(n) * (n - 1) / 2);
      for (unsigned i = 2; i <= n; ++i) {
        BigInt t = big_pow(q, i);
        o *= (i % 2 == 0) ? t - 1 : t + 1;
      }
      return o;
    }
  }
  return 0;
}

namespace {

// Elementary matrix helpers; entries are (row, col, coefficient).
Mat elem_mat(const Field& f, unsigned n, std::initializer_list<std::tuple<unsigned, unsigned, felem>> entries) {
  Mat m = mat_identity(f, n);
  for (auto [i, j, c] : entries) m.at(i, j) = f.add(m.at(i, j), c);
  return m;
}

// F_p-basis of GF(q): codes of 1, x, x^2, ...
std::vector<felem> field_basis(const Field& f) {
  std::vector<felem> b;
  felem v = 1;
  for (unsigned i = 0; i < f.k(); ++i) {
    b.push_back(v);
    v = static_cast<felem>(v * f.p());  // code of x^(i+1)
  }
  return b;
}

std::uint64_t element_multiplicative_order(const Field& f, felem a) {
  std::uint64_t o = 1;
  felem v = a;
  while (v != 1) {
    v = f.mul(v, a);
    ++o;
    if (o > f.q()) fail(Err::OutOfRange, "order scan overflow (internal)");
  }
  return o;
}

felem primitive_element(const Field& f) {
  for (felem a = 2; a < f.q(); ++a)
    if (element_multiplicative_order(f, a) == f.q() - 1) return a;
  // q = 2 or 3: 1 resp. 2
  return f.q() == 2 ? 1 : 2;
}

void push_with_inverse(const Field& f, std::vector<Mat>& out, const Mat& g) {
  out.push_back(g);
  auto gi = mat_inverse(f, g);
  assert(gi);
  if (!(*gi == g)) out.push_back(*gi);
}

std::vector<Mat> sl_usual_generators(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned n = spec.rank + 1;
  std::vector<Mat> out;
  out.push_back(mat_identity(f, n));
  for (unsigned i = 0; i + 1 < n; ++i)
    for (felem c : field_basis(f)) {
      push_with_inverse(f, out, elem_mat(f, n, {{i, i + 1, c}}));
      push_with_inverse(f, out, elem_mat(f, n, {{i + 1, i, c}}));
    }
  return out;
}

std::vector<Mat> sp_generators(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned r = spec.rank, n = spec.n;
  std::vector<Mat> out;
  out.push_back(mat_identity(f, n));
  for (felem c : field_basis(f)) {
    felem mc = f.neg(c);
    for (unsigned i = 0; i + 1 < r; ++i) {
      // root e_i - e_{i+1} and its negative
      push_with_inverse(f, out, elem_mat(f, n, {{i, i + 1, c}, {r + i + 1, r + i, mc}}));
      push_with_inverse(f, out, elem_mat(f, n, {{i + 1, i, c}, {r + i, r + i + 1, mc}}));
    }
    // long root 2e_r and its negative
    push_with_inverse(f, out, elem_mat(f, n, {{r - 1, 2 * r - 1, c}}));
    push_with_inverse(f, out, elem_mat(f, n, {{2 * r - 1, r - 1, c}}));
  }
  return out;
}

std::vector<Mat> so_generators(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned r = spec.rank, n = spec.n;
  const bool odd = spec.family == Family::SOOdd;
  std::vector<Mat> out;
  out.push_back(mat_identity(f, n));
  for (felem c : field_basis(f)) {
    felem mc = f.neg(c);
    for (unsigned i = 0; i + 1 < r; ++i) {
      push_with_inverse(f, out, elem_mat(f, n, {{i, i + 1, c}, {r + i + 1, r + i, mc}}));
      push_with_inverse(f, out, elem_mat(f, n, {{i + 1, i, c}, {r + i, r + i + 1, mc}}));
    }
    if (odd) {
      // short root e_r: quadratic correction term -c^2/2
      felem corr = f.neg(f.div(f.mul(c, c), f.from_int(2)));
      Mat s = mat_identity(f, n);
      s.at(r - 1, 2 * r) = c;
      s.at(2 * r, 2 * r - 1) = mc;
      s.at(r - 1, 2 * r - 1) = corr;
      push_with_inverse(f, out, s);
      push_with_inverse(f, out, mat_transpose(s));
    } else if (r >= 2) {
      // D-node root e_{r-1} + e_r
      push_with_inverse(f, out, elem_mat(f, n, {{r - 2, 2 * r - 1, c}, {r - 1, 2 * r - 2, mc}}));
      push_with_inverse(f, out,
                        elem_mat(f, n, {{2 * r - 1, r - 2, c}, {2 * r - 2, r - 1, mc}}));
    }
  }
  // torus element with nonsquare spinor norm, to step outside Omega
  felem eta = primitive_element(f);
  Mat t = mat_identity(f, n);
  t.at(0, 0) = eta;
  t.at(r, r) = f.inv(eta);
  push_with_inverse(f, out, t);
  return out;
}

std::vector<Mat> su_generators(const GroupSpec& spec) {
  const Field& f = spec.field;
  QuadExt E = su_ext(spec);
  const unsigned n = spec.su_n;
  const std::uint64_t q = f.q();

  // generator of the norm-1 subgroup: omega^(q-1) for omega primitive in GF(q^2)
  QuadExt::Elem omega = E.one();
  for (std::uint64_t code = 1; code < E.q2(); ++code) {
    QuadExt::Elem w = E.from_code(code);
    if (E.is_zero(w)) continue;
    // order check: w has order q^2-1 iff w^((q^2-1)/ell) != 1 for prime ell
    std::uint64_t m = q * q - 1;
    bool primitive = true;
    std::uint64_t rest = m;
    for (std::uint64_t ell = 2; ell * ell <= rest; ++ell) {
      if (rest % ell) continue;
      while (rest % ell == 0) rest /= ell;
      if (E.pow(w, m / ell) == E.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive && rest > 1 && E.pow(w, m / rest) == E.one()) primitive = false;
    if (primitive) {
      omega = w;
      break;
    }
  }
  QuadExt::Elem alpha = E.pow(omega, q - 1);

  // a generic SU_2 element (a, b; -conj b, conj a) with norm(a)+norm(b)=1, a,b != 0
  QuadExt::Elem ua = E.zero(), ub = E.zero();
  bool found = false;
  for (std::uint64_t ca = 1; ca < E.q2() && !found; ++ca)
    for (std::uint64_t cb = 1; cb < E.q2() && !found; ++cb) {
      QuadExt::Elem a = E.from_code(ca), b = E.from_code(cb);
      if (f.add(E.norm(a), E.norm(b)) == 1) {
        ua = a;
        ub = b;
        found = true;
      }
    }
  if (!found) fail(Err::OutOfRange, "no SU2 cell generator found (internal)");

  auto embed_block = [&](unsigned i, QuadExt::Elem b00, QuadExt::Elem b01, QuadExt::Elem b10,
                         QuadExt::Elem b11) {
    QMat g(static_cast<std::size_t>(n) * n, E.zero());
    for (unsigned d = 0; d < n; ++d) g[d * n + d] = E.one();
    g[i * n + i] = b00;
    g[i * n + i + 1] = b01;
    g[(i + 1) * n + i] = b10;
    g[(i + 1) * n + i + 1] = b11;
    return su_phi(spec, g);
  };

  std::vector<Mat> out;
  out.push_back(mat_identity(f, spec.n));
  for (unsigned i = 0; i + 1 < n; ++i) {
    push_with_inverse(f, out, embed_block(i, alpha, E.zero(), E.zero(), E.inv(alpha)));
    push_with_inverse(f, out, embed_block(i, E.zero(), E.one(), E.neg(E.one()), E.zero()));
    push_with_inverse(f, out,
                      embed_block(i, ua, ub, E.neg(E.conj(ub)), E.conj(ua)));
  }
  return out;
}

}  // namespace

std::vector<Mat> standard_generators(const GroupSpec& spec) {
  std::vector<Mat> gens;
  switch (spec.family) {
    case Family::SL:
      if (spec.embedding == Embedding::Usual) {
        gens = sl_usual_generators(spec);
      } else {
        GroupSpec usual = make_group(Family::SL, spec.rank, spec.field, Embedding::Usual);
        for (const Mat& g : sl_usual_generators(usual)) gens.push_back(contragredient_embed(usual, g));
      }
      break;
    case Family::Sp: gens = sp_generators(spec); break;
    case Family::SOOdd:
    case Family::SOEvenPlus: gens = so_generators(spec); break;
    case Family::SUTwisted: gens = su_generators(spec); break;
  }
  // dedupe while keeping first-seen order (inverses may collide with generators)
  std::vector<Mat> out;
  for (const Mat& g : gens) {
    bool seen = false;
    for (const Mat& h : out)
      if (h == g) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(g);
  }
  return out;
}

std::string standard_generator_label(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::SL: return "transvections";
    case Family::Sp: return "root_elements";
    case Family::SOOdd:
    case Family::SOEvenPlus: return "root_elements_plus_torus";
    case Family::SUTwisted: return "su2_cells";
  }
  return "?";
}

bool lie_contains(const GroupSpec& spec, const Mat& x) {
  if (x.n != spec.n) fail(Err::DimensionMismatch, "lie_contains: ambient size");
  const Field& f = spec.field;
  switch (spec.family) {
    case Family::SL: {
      if (spec.embedding == Embedding::Usual) {
        felem tr = 0;
        for (unsigned i = 0; i < x.n; ++i) tr = f.add(tr, x.at(i, i));
        return tr == 0;
      }
      const unsigned h = spec.n / 2;
      felem tr = 0;
      for (unsigned i = 0; i < h; ++i)
        for (unsigned j = 0; j < h; ++j) {
          if (x.at(i, h + j) != 0 || x.at(h + i, j) != 0) return false;
          if (x.at(h + i, h + j) != f.neg(x.at(j, i))) return false;
        }
      for (unsigned i = 0; i < h; ++i) tr = f.add(tr, x.at(i, i));
      return tr == 0;
    }
    case Family::Sp:
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      Mat lhs = mat_add(f, mat_mul(f, mat_transpose(x), spec.form), mat_mul(f, spec.form, x));
      return std::all_of(lhs.a.begin(), lhs.a.end(), [](felem v) { return v == 0; });
    }
    case Family::SUTwisted: {
      auto g = su_lift(spec, x);
      if (!g) return false;
      QuadExt E = su_ext(spec);
      const unsigned n = spec.su_n;
      // anti-Hermitian with zero trace
      QuadExt::Elem tr = E.zero();
      for (unsigned i = 0; i < n; ++i) {
        tr = E.add(tr, (*g)[i * n + i]);
        for (unsigned j = 0; j < n; ++j) {
          QuadExt::Elem want = E.neg(E.conj((*g)[j * n + i]));
          if (!((*g)[i * n + j] == want)) return false;
        }
      }
      return E.is_zero(tr);
    }
  }
  return false;
}

Mat bracket(const Field& f, const Mat& x, const Mat& y) {
  if (x.n != y.n) fail(Err::DimensionMismatch, "bracket");
  return mat_sub(f, mat_mul(f, x, y), mat_mul(f, y, x));
}

Mat adjoint(const GroupSpec& spec, const Mat& g, const Mat& x) {
  if (g.n != spec.n || x.n != spec.n) fail(Err::DimensionMismatch, "adjoint");
  if (!contains(spec, g)) fail(Err::NotInGroup, "adjoint: conjugator not in the group");
  const Field& f = spec.field;
  auto gi = mat_inverse(f, g);
  assert(gi);
  return mat_mul(f, mat_mul(f, g, x), *gi);
}

std::vector<Mat> lie_basis(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned n = spec.n;
  const unsigned vars = n * n;
  // rows of linear constraints on the n^2 entries
  std::vector<std::vector<felem>> rows;
  auto row = [&]() -> std::vector<felem>& {
    rows.emplace_back(vars, 0);
    return rows.back();
  };
  switch (spec.family) {
    case Family::SL: {
      if (spec.embedding == Embedding::Usual) {
        auto& tr = row();
        for (unsigned i = 0; i < n; ++i) tr[i * n + i] = 1;
      } else {
        const unsigned h = n / 2;
        for (unsigned i = 0; i < h; ++i)
          for (unsigned j = 0; j < h; ++j) {
            row()[i * n + (h + j)] = 1;
            row()[(h + i) * n + j] = 1;
            auto& rr = row();  // X2 + X1^T = 0
            rr[(h + i) * n + (h + j)] = 1;
            rr[j * n + i] = f.add(rr[j * n + i], 1);
          }
        auto& tr = row();
        for (unsigned i = 0; i < h; ++i) tr[i * n + i] = 1;
      }
      break;
    }
    case Family::Sp:
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      // (X^T M + M X)_{ab} = sum_c X_{ca} M_{cb} + M_{ac} X_{cb} = 0
      for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
          auto& rr = row();
          for (unsigned c = 0; c < n; ++c) {
            rr[c * n + a] = f.add(rr[c * n + a], spec.form.at(c, b));
            rr[c * n + b] = f.add(rr[c * n + b], spec.form.at(a, c));
          }
        }
      break;
    }
    case Family::SUTwisted: {
      const unsigned m = spec.su_n;
      const felem s = spec.su_s;
      // shape of every 2x2 block
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
          auto& r1 = row();
          r1[(2 * i) * n + 2 * j] = 1;
          r1[(2 * i + 1) * n + (2 * j + 1)] = f.add(r1[(2 * i + 1) * n + (2 * j + 1)], f.neg(1));
          auto& r2 = row();
          r2[(2 * i) * n + (2 * j + 1)] = 1;
          r2[(2 * i + 1) * n + 2 * j] = f.add(r2[(2 * i + 1) * n + 2 * j], f.neg(s));
        }
      // anti-Hermitian: a-part X_{ij} + a-part X_{ji} = 0; b-part X_{ij} - b-part X_{ji} = 0
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
          auto& r1 = row();
          r1[(2 * i) * n + 2 * j] = f.add(r1[(2 * i) * n + 2 * j], 1);
          r1[(2 * j) * n + 2 * i] = f.add(r1[(2 * j) * n + 2 * i], 1);
          auto& r2 = row();
          r2[(2 * i + 1) * n + 2 * j] = f.add(r2[(2 * i + 1) * n + 2 * j], 1);
          r2[(2 * j + 1) * n + 2 * i] = f.add(r2[(2 * j + 1) * n + 2 * i], f.neg(1));
        }
      // zero trace (b-part; a-part already forced by anti-Hermitian diagonal)
      auto& tr = row();
      for (unsigned i = 0; i < m; ++i) tr[(2 * i + 1) * n + 2 * i] = 1;
      break;
    }
  }

  // nullspace by Gaussian elimination
  const unsigned nrows = static_cast<unsigned>(rows.size());
  std::vector<int> pivot_col(nrows, -1);
  unsigned rank = 0;
  for (unsigned col = 0; col < vars && rank < nrows; ++col) {
    unsigned piv = rank;
    while (piv < nrows && rows[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(rows[piv], rows[rank]);
    felem pinv = f.inv(rows[rank][col]);
    for (unsigned j = 0; j < vars; ++j) rows[rank][j] = f.mul(rows[rank][j], pinv);
    for (unsigned i = 0; i < nrows; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      felem factor = rows[i][col];
      for (unsigned j = 0; j < vars; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[rank][j]));
    }
    pivot_col[rank] = static_cast<int>(col);
    ++rank;
  }
  std::vector<bool> is_pivot(vars, false);
  for (unsigned i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;

  std::vector<Mat> basis;
  for (unsigned freec = 0; freec < vars; ++freec) {
    if (is_pivot[freec]) continue;
    Mat b(f, n);
    b.a[freec] = 1;
    for (unsigned i = 0; i < rank; ++i) {
      felem coef = rows[i][freec];
      if (coef != 0) b.a[pivot_col[i]] = f.neg(coef);
    }
    basis.push_back(b);
  }
  return basis;
}

unsigned lie_nullity(const GroupSpec& spec) {
  return static_cast<unsigned>(lie_basis(spec).size());
}

Mat cayley(const GroupSpec& spec, const Mat& x) {
  if (spec.family != Family::Sp && spec.family != Family::SOOdd &&
      spec.family != Family::SOEvenPlus)
    fail(Err::UnsupportedFamily, "Cayley transform applies to Sp/SO here");
  if (spec.field.p() == 2) fail(Err::EvenCharacteristic, "Cayley transform needs odd q");
  if (x.n != spec.n) fail(Err::DimensionMismatch, "cayley");
  const Field& f = spec.field;
  Mat id = mat_identity(f, spec.n);
  Mat plus = mat_add(f, id, x);
  auto inv = mat_inverse(f, plus);
  if (!inv) fail(Err::OnSingularLocus, "det(Id + x) = 0");
  return mat_mul(f, mat_sub(f, id, x), *inv);
}

Mat contragredient_embed(const GroupSpec& usual_sl, const Mat& m) {
  if (usual_sl.family != Family::SL || usual_sl.embedding != Embedding::Usual)
    fail(Err::UnsupportedFamily, "contragredient_embed expects a usual SL spec");
  const Field& f = usual_sl.field;
  if (m.n != usual_sl.n) fail(Err::DimensionMismatch, "contragredient_embed");
  if (mat_det(f, m) != 1) fail(Err::NotInSL, "det != 1");
  auto mi = mat_inverse(f, m);
  Mat mit = mat_transpose(*mi);
  const unsigned h = m.n;
  Mat out(f, 2 * h);
  for (unsigned i = 0; i < h; ++i)
    for (unsigned j = 0; j < h; ++j) {
      out.at(i, j) = m.at(i, j);
      out.at(h + i, h + j) = mit.at(i, j);
    }
  return out;
}

std::vector<Mat> torus_points(const GroupSpec& spec) {
  const Field& f = spec.field;
  std::vector<Mat> out;
  switch (spec.family) {
    case Family::SL: {
      const unsigned nu = spec.rank + 1;
      // tuples (t_1..t_nu) of units with product 1; first nu-1 free
      std::vector<felem> units;
      for (felem v = 1; v < f.q(); ++v) units.push_back(v);
      std::vector<unsigned> idx(nu - 1, 0);
      while (true) {
        felem prod = 1;
        Mat d(f, nu);
        for (unsigned i = 0; i + 1 < nu; ++i) {
          d.at(i, i) = units[idx[i]];
          prod = f.mul(prod, units[idx[i]]);
        }
        d.at(nu - 1, nu - 1) = f.inv(prod);
        out.push_back(spec.embedding == Embedding::Usual
                          ? d
                          : contragredient_embed(
                                make_group(Family::SL, spec.rank, f, Embedding::Usual), d));
        unsigned pos = 0;
        while (pos < idx.size() && ++idx[pos] == units.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
        if (idx.empty()) break;
      }
      if (nu == 1) out.push_back(mat_identity(f, spec.n));
      return out;
    }
    case Family::Sp:
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      const unsigned r = spec.rank;
      std::vector<felem> units;
      for (felem v = 1; v < f.q(); ++v) units.push_back(v);
      std::vector<unsigned> idx(r, 0);
      while (true) {
        Mat d(f, spec.n);
        for (unsigned i = 0; i < r; ++i) {
          d.at(i, i) = units[idx[i]];
          d.at(r + i, r + i) = f.inv(units[idx[i]]);
        }
        if (spec.family == Family::SOOdd) d.at(2 * r, 2 * r) = 1;
        out.push_back(d);
        unsigned pos = 0;
        while (pos < idx.size() && ++idx[pos] == units.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
      return out;
    }
    case Family::SUTwisted: {
      QuadExt E = su_ext(spec);
      const unsigned n = spec.su_n;
      const std::uint64_t q = f.q();
      // norm-1 subgroup, cyclic of order q+1
      QuadExt::Elem alpha = E.one();
      for (std::uint64_t code = 1; code < E.q2(); ++code) {
        QuadExt::Elem w = E.from_code(code);
        if (E.is_zero(w)) continue;
        if (E.norm(w) != 1) continue;
        // want a generator of the norm-1 group
        std::uint64_t o = 1;
        QuadExt::Elem v = w;
        while (!(v == E.one())) {
          v = E.mul(v, w);
          ++o;
        }
        if (o == q + 1) {
          alpha = w;
          break;
        }
      }
      std::vector<QuadExt::Elem> circle;
      QuadExt::Elem v = E.one();
      for (std::uint64_t j = 0; j <= q; ++j) {
        circle.push_back(v);
        v = E.mul(v, alpha);
      }
      std::vector<unsigned> idx(n - 1, 0);
      while (true) {
        QMat d(static_cast<std::size_t>(n) * n, E.zero());
        QuadExt::Elem prod = E.one();
        for (unsigned i = 0; i + 1 < n; ++i) {
          d[i * n + i] = circle[idx[i]];
          prod = E.mul(prod, circle[idx[i]]);
        }
        d[(n - 1) * n + (n - 1)] = E.inv(prod);
        out.push_back(su_phi(spec, d));
        unsigned pos = 0;
        while (pos < idx.size() && ++idx[pos] == circle.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
      return out;
    }
  }
  return out;
}

bool torus_shape(const GroupSpec& spec, const Mat& m) {
  if (spec.family == Family::SUTwisted) {
    auto g = su_lift(spec, m);
    if (!g) return false;
    QuadExt E = su_ext(spec);
    const unsigned n = spec.su_n;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (i != j && !E.is_zero((*g)[i * n + j])) return false;
    return true;
  }
  for (unsigned i = 0; i < m.n; ++i)
    for (unsigned j = 0; j < m.n; ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

std::vector<Mat> torus_lie_basis(const GroupSpec& spec) {
  const Field& f = spec.field;
  std::vector<Mat> out;
  switch (spec.family) {
    case Family::SL: {
      const unsigned nu = spec.rank + 1;
      for (unsigned i = 0; i + 1 < nu; ++i) {
        Mat b(f, nu);
        b.at(i, i) = 1;
        b.at(i + 1, i + 1) = f.neg(1);
        if (spec.embedding == Embedding::Usual) {
          out.push_back(b);
        } else {
          Mat big(f, spec.n);
          for (unsigned a = 0; a < nu; ++a) {
            big.at(a, a) = b.at(a, a);
            big.at(nu + a, nu + a) = f.neg(b.at(a, a));
          }
          out.push_back(big);
        }
      }
      return out;
    }
    case Family::Sp:
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      const unsigned r = spec.rank;
      for (unsigned i = 0; i < r; ++i) {
        Mat b(f, spec.n);
        b.at(i, i) = 1;
        b.at(r + i, r + i) = f.neg(1);
        out.push_back(b);
      }
      return out;
    }
    case Family::SUTwisted: {
      QuadExt E = su_ext(spec);
      const unsigned n = spec.su_n;
      for (unsigned i = 0; i + 1 < n; ++i) {
        QMat b(static_cast<std::size_t>(n) * n, E.zero());
        b[i * n + i] = E.zeta();
        b[(i + 1) * n + (i + 1)] = E.neg(E.zeta());
        // phi is linear on entries, so this is a Lie basis vector downstairs
        Mat big(f, spec.n);
        const Mat ph = su_phi(spec, b);
        for (unsigned a = 0; a < spec.n; ++a)
          for (unsigned c = 0; c < spec.n; ++c) big.at(a, c) = ph.at(a, c);
        out.push_back(big);
      }
      return out;
    }
  }
  return out;
}

}  // namespace growthlab
