#include "growthlab/variety.hpp"

#include <algorithm>

namespace growthlab {

bool VarietySpec::contains_point(const Field& f, const Mat& m) const {
  if (m.a.size() != nvars) fail(Err::DimensionMismatch, "variety_contains: point size");
  for (const Poly& p : equations)
    if (poly_eval(f, p, m) != 0) return false;
  return true;
}

bool VarietySpec::member(const Field& f, const Mat& m) const {
  if (fast_member) {
    if (m.a.size() != nvars) fail(Err::DimensionMismatch, "variety member: point size");
    return fast_member(m);
  }
  return contains_point(f, m);
}

bool variety_contains(const GroupSpec& spec, const VarietySpec& v, const Mat& m) {
  return v.contains_point(spec.field, m);
}

namespace {

Poly entry_var(unsigned N, unsigned i, unsigned j) {
  return Poly::variable(N * N, i * N + j);
}

// usual-SL / Sp / SO diagonal equations share shape: off-diagonal vanishing
// plus multiplicative relations among diagonal entries.
void push_offdiag(const GroupSpec& spec, std::vector<Poly>& eqs) {
  const unsigned N = spec.n;
  for (unsigned i = 0; i < N; ++i)
    for (unsigned j = 0; j < N; ++j)
      if (i != j) eqs.push_back(entry_var(N, i, j));
}

}  // namespace

VarietySpec identity_variety(const GroupSpec& spec) {
  const unsigned N = spec.n;
  VarietySpec v;
  v.label = "identity";
  v.provenance = "single point";
  v.nvars = N * N;
  v.dim_d = 0;
  v.deg_D = 1;
  const Field& f = spec.field;
  for (unsigned i = 0; i < N; ++i)
    for (unsigned j = 0; j < N; ++j) {
      Poly p = entry_var(N, i, j);
      if (i == j) p = p.sub(f, Poly::constant(N * N, 1));
      if (!p.is_zero()) v.equations.push_back(p);
    }
  v.fast_member = [N](const Mat& m) { return mat_is_identity(m) && m.n == N; };
  return v;
}

VarietySpec diagonal_torus(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned N = spec.n;
  const unsigned nvars = N * N;
  VarietySpec v;
  v.label = "diagonal_torus";
  v.nvars = nvars;
  v.dim_d = spec.rank;

  switch (spec.family) {
    case Family::SL: {
      const unsigned nu = spec.rank + 1;
      if (spec.embedding == Embedding::Usual) {
        push_offdiag(spec, v.equations);
        Poly prod = Poly::constant(nvars, 1);
        for (unsigned i = 0; i < nu; ++i) prod = prod.mul(f, entry_var(N, i, i));
        v.equations.push_back(prod.sub(f, Poly::constant(nvars, 1)));
        v.deg_D = spec.rank + 1;
        v.provenance = "degree <= r+1, diagonal torus of SL in GL";
      } else {
        push_offdiag(spec, v.equations);
        for (unsigned i = 0; i < nu; ++i) {
          Poly rel = entry_var(N, i, i).mul(f, entry_var(N, nu + i, nu + i));
          v.equations.push_back(rel.sub(f, Poly::constant(nvars, 1)));
        }
        Poly prod = Poly::constant(nvars, 1);
        for (unsigned i = 0; i < nu; ++i) prod = prod.mul(f, entry_var(N, i, i));
        v.equations.push_back(prod.sub(f, Poly::constant(nvars, 1)));
        v.deg_D = big_pow(2, spec.rank);
        v.provenance = "degree <= 2^r, maximal torus bound";
      }
      break;
    }
    case Family::Sp:
    case Family::SOOdd:
    case Family::SOEvenPlus: {
      const unsigned r = spec.rank;
      push_offdiag(spec, v.equations);
      for (unsigned i = 0; i < r; ++i) {
        Poly rel = entry_var(N, i, i).mul(f, entry_var(N, r + i, r + i));
        v.equations.push_back(rel.sub(f, Poly::constant(nvars, 1)));
      }
      if (spec.family == Family::SOOdd)
        v.equations.push_back(entry_var(N, 2 * r, 2 * r).sub(f, Poly::constant(nvars, 1)));
      v.deg_D = big_pow(2, spec.rank);
      v.provenance = "degree <= 2^r, diagonal entries x_i and x_i^-1";
      break;
    }
    case Family::SUTwisted: {
      const unsigned n = spec.su_n;
      const felem s = spec.su_s;
      // off-diagonal 2x2 blocks vanish entirely
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          if (i == j) continue;
          for (unsigned di = 0; di < 2; ++di)
            for (unsigned dj = 0; dj < 2; ++dj)
              v.equations.push_back(entry_var(N, 2 * i + di, 2 * j + dj));
        }
      // diagonal blocks have the (a, sb; b, a) shape and norm 1
      for (unsigned i = 0; i < n; ++i) {
        Poly a = entry_var(N, 2 * i, 2 * i);
        Poly b = entry_var(N, 2 * i + 1, 2 * i);
        v.equations.push_back(entry_var(N, 2 * i + 1, 2 * i + 1).sub(f, a));
        v.equations.push_back(entry_var(N, 2 * i, 2 * i + 1).sub(f, b.scalar_mul(f, s)));
        Poly norm = a.mul(f, a).sub(f, b.mul(f, b).scalar_mul(f, s));
        v.equations.push_back(norm.sub(f, Poly::constant(nvars, 1)));
      }
      // determinant of the lifted diagonal: product of the alpha_i equals 1
      {
        PolyPair prod{Poly::constant(nvars, 1), Poly(nvars)};
        for (unsigned i = 0; i < n; ++i) {
          PolyPair d{entry_var(N, 2 * i, 2 * i), entry_var(N, 2 * i + 1, 2 * i)};
          Poly ac = prod.a.mul(f, d.a), bd = prod.b.mul(f, d.b);
          Poly ad = prod.a.mul(f, d.b), bc = prod.b.mul(f, d.a);
          prod = {ac.add(f, bd.scalar_mul(f, s)), ad.add(f, bc)};
        }
        v.equations.push_back(prod.a.sub(f, Poly::constant(nvars, 1)));
        v.equations.push_back(prod.b);
      }
      v.deg_D = big_pow(2, n) * n * n;
      v.provenance = "Bezout product of the defining equations";
      break;
    }
  }

  GroupSpec owned = spec;  // keep a copy alive inside the closure
  v.fast_member = [owned = std::move(owned)](const Mat& m) {
    if (!torus_shape(owned, m)) return false;
    const Field& f2 = owned.field;
    // diagonal relations per family
    switch (owned.family) {
      case Family::SL: {
        unsigned nu = owned.rank + 1;
        felem prod = 1;
        if (owned.embedding == Embedding::Usual) {
          for (unsigned i = 0; i < nu; ++i) prod = f2.mul(prod, m.at(i, i));
          return prod == 1;
        }
        for (unsigned i = 0; i < nu; ++i) {
          if (f2.mul(m.at(i, i), m.at(nu + i, nu + i)) != 1) return false;
          prod = f2.mul(prod, m.at(i, i));
        }
        return prod == 1;
      }
      case Family::Sp:
      case Family::SOOdd:
      case Family::SOEvenPlus: {
        unsigned r = owned.rank;
        for (unsigned i = 0; i < r; ++i)
          if (f2.mul(m.at(i, i), m.at(r + i, r + i)) != 1) return false;
        if (owned.family == Family::SOOdd && m.at(2 * r, 2 * r) != 1) return false;
        return true;
      }
      case Family::SUTwisted: {
        auto g = su_lift(owned, m);
        if (!g) return false;
        QuadExt E = su_ext(owned);
        unsigned n = owned.su_n;
        QuadExt::Elem prod = E.one();
        for (unsigned i = 0; i < n; ++i) {
          for (unsigned j = 0; j < n; ++j)
            if (i != j && !E.is_zero((*g)[i * n + j])) return false;
          if (E.norm((*g)[i * n + i]) != 1) return false;
          prod = E.mul(prod, (*g)[i * n + i]);
        }
        return prod == E.one();
      }
    }
    return false;
  };
  return v;
}

namespace {

// For the contragredient SL embedding, the regular-semisimple notion lives
// on the upper block (the block matrix itself always has paired eigenvalues).
std::vector<Poly> charpoly_entry_polys(const GroupSpec& spec, unsigned& size_out) {
  const unsigned N = spec.n;
  if (spec.family == Family::SL && spec.embedding == Embedding::BlockContragredient) {
    const unsigned nu = spec.rank + 1;
    size_out = nu;
    std::vector<Poly> entries;
    for (unsigned i = 0; i < nu; ++i)
      for (unsigned j = 0; j < nu; ++j) entries.push_back(entry_var(N, i, j));
    return entries;
  }
  size_out = N;
  std::vector<Poly> entries;
  for (unsigned i = 0; i < N; ++i)
    for (unsigned j = 0; j < N; ++j) entries.push_back(entry_var(N, i, j));
  return entries;
}

std::vector<PolyPair> su_entry_polys(const GroupSpec& spec) {
  const unsigned N = spec.n, n = spec.su_n;
  std::vector<PolyPair> entries;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      entries.push_back({entry_var(N, 2 * i, 2 * j), entry_var(N, 2 * i + 1, 2 * j)});
  return entries;
}

Mat extract_block(const GroupSpec& spec, const Mat& m) {
  if (spec.family == Family::SL && spec.embedding == Embedding::BlockContragredient) {
    const unsigned nu = spec.rank + 1;
    Mat x(spec.field, nu);
    for (unsigned i = 0; i < nu; ++i)
      for (unsigned j = 0; j < nu; ++j) x.at(i, j) = m.at(i, j);
    return x;
  }
  return m;
}

std::vector<QuadExt::Elem> su_char_poly(const GroupSpec& spec, const Mat& m, QuadExt& E) {
  auto g = su_lift(spec, m);
  if (!g) fail(Err::NotInGroup, "unitary shape violated");
  return char_poly_quad(E, *g, spec.su_n);
}

}  // namespace

UPoly group_char_poly(const GroupSpec& spec, const Mat& m) {
  if (spec.family == Family::SUTwisted)
    fail(Err::UnsupportedFamily, "use the quadratic-extension path for unitary specs");
  return char_poly(spec.field, extract_block(spec, m));
}

bool is_regular_semisimple(const GroupSpec& spec, const Mat& m) {
  if (!contains(spec, m)) fail(Err::NotInGroup, "is_regular_semisimple");
  if (spec.family == Family::SUTwisted) {
    QuadExt E = su_ext(spec);
    auto cp = su_char_poly(spec, m, E);
    return !E.is_zero(discriminant_quad(E, cp));
  }
  UPoly cp = group_char_poly(spec, m);
  return discriminant(spec.field, cp) != 0;
}

VarietySpec nonregular_locus(const GroupSpec& spec) {
  const Field& f = spec.field;
  const unsigned N = spec.n;
  VarietySpec v;
  v.label = "nonregular_locus";
  v.nvars = N * N;
  v.dim_d = spec.dim - 1;

  if (spec.family == Family::SUTwisted) {
    PolyPair disc = discriminant_symbolic_quad(f, spec.su_s, spec.su_n, su_entry_polys(spec));
    v.equations.push_back(disc.a);
    v.equations.push_back(disc.b);
    BigInt nd = BigInt(spec.su_n) * (spec.su_n - 1);
    v.deg_D = nd * nd;
    v.provenance = "both components of disc(char_poly), Bezout product";
  } else {
    unsigned nu = 0;
    std::vector<Poly> entries = charpoly_entry_polys(spec, nu);
    v.equations.push_back(discriminant_symbolic_entries(f, nu, entries));
    v.deg_D = BigInt(nu) * (nu - 1);
    v.provenance = "disc(char_poly) has degree n(n-1)";
  }

  GroupSpec owned = spec;
  v.fast_member = [owned = std::move(owned)](const Mat& m) {
    const Field& f2 = owned.field;
    if (owned.family == Family::SUTwisted) {
      QuadExt E = su_ext(owned);
      auto g = su_lift(owned, m);
      if (!g) return false;  // off the unitary shape the lift (hence the locus) is empty
      auto cp = char_poly_quad(E, *g, owned.su_n);
      return E.is_zero(discriminant_quad(E, cp));
    }
    UPoly cp = char_poly(f2, extract_block(owned, m));
    return discriminant(f2, cp) == 0;
  };
  return v;
}

VarietySpec conjugacy_class_variety(const GroupSpec& spec, const Mat& g) {
  if (!is_regular_semisimple(spec, g))
    fail(Err::NotRegularSemisimple, "conjugacy_class_variety needs a regular semisimple element");
  const Field& f = spec.field;
  const unsigned N = spec.n;
  VarietySpec v;
  v.label = "conjugacy_class";
  v.nvars = N * N;
  v.dim_d = spec.dim - spec.rank;
  // numeric factorials stay small at desk scale
  BigInt fact = 1;
  for (unsigned i = 2; i <= N; ++i) fact *= i;
  v.deg_D = fact * spec.delta_bound;
  v.provenance = "deg(Cl(g)) <= n! * Delta_bound";

  if (spec.family == Family::SUTwisted) {
    QuadExt E = su_ext(spec);
    auto target = su_char_poly(spec, g, E);
    std::vector<PolyPair> cp = char_poly_symbolic_quad(f, spec.su_s, spec.su_n, su_entry_polys(spec));
    for (unsigned i = 0; i < spec.su_n; ++i) {  // degree-n coefficient is 1 on both sides
      v.equations.push_back(cp[i].a.sub(f, Poly::constant(v.nvars, target[i].a)));
      v.equations.push_back(cp[i].b.sub(f, Poly::constant(v.nvars, target[i].b)));
    }
    GroupSpec owned = spec;
    std::vector<QuadExt::Elem> tgt = target;
    v.fast_member = [owned = std::move(owned), tgt](const Mat& m) {
      QuadExt E2 = su_ext(owned);
      auto h = su_lift(owned, m);
      if (!h) return false;
      return char_poly_quad(E2, *h, owned.su_n) == tgt;
    };
    return v;
  }

  UPoly target = group_char_poly(spec, g);
  unsigned nu = 0;
  std::vector<Poly> entries = charpoly_entry_polys(spec, nu);
  std::vector<Poly> cp = char_poly_symbolic_entries(f, nu, entries);
  for (unsigned i = 0; i < nu; ++i)
    v.equations.push_back(cp[i].sub(f, Poly::constant(v.nvars, target.c[i])));
  GroupSpec owned = spec;
  v.fast_member = [owned = std::move(owned), target](const Mat& m) {
    return char_poly(owned.field, extract_block(owned, m)) == target;
  };
  return v;
}

VarietySpec hyperplane_variety(const GroupSpec& spec, const std::vector<felem>& coeffs, felem c) {
  const unsigned nvars = spec.n * spec.n;
  if (coeffs.size() != nvars) fail(Err::DimensionMismatch, "hyperplane coefficient count");
  const Field& f = spec.field;
  VarietySpec v;
  v.label = "hyperplane";
  v.provenance = "single linear equation";
  v.nvars = nvars;
  v.dim_d = nvars - 1;
  v.deg_D = 1;
  Poly p = Poly::constant(nvars, c);
  for (unsigned i = 0; i < nvars; ++i)
    if (coeffs[i] != 0) p = p.add(f, Poly::variable(nvars, i).scalar_mul(f, coeffs[i]));
  v.equations.push_back(p);
  return v;
}

}  // namespace growthlab
