#include "growthlab/census.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace growthlab {

using json = nlohmann::json;

namespace {

std::string big_str(const BigInt& v) { return v.str(); }

// json helper: exact integers as strings when they may exceed 2^53
json big_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(1) << 53) return static_cast<std::uint64_t>(v);
  return v.str();
}

}  // namespace

std::vector<Mat> enumerate_group_bfs(const GroupSpec& spec, const std::vector<Mat>& gens,
                                     const EnumOptions& opts) {
  const Field& f = spec.field;
  mat_key_bits(f, spec.n);  // throws if unpackable
  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<Mat> out;
  Mat e = mat_identity(f, spec.n);
  seen.insert(mat_key(f, e));
  out.push_back(e);
  std::size_t frontier_begin = 0;
  while (frontier_begin < out.size()) {
    std::size_t frontier_end = out.size();
    if (opts.threads <= 1) {
      for (std::size_t i = frontier_begin; i < frontier_end; ++i)
        for (const Mat& g : gens) {
          Mat h = mat_mul(f, out[i], g);
          if (seen.insert(mat_key(f, h)).second) {
            out.push_back(h);
            if (out.size() > opts.budget) fail(Err::BudgetExceeded, "closure exceeds budget");
          }
        }
    } else {
      // parallel product generation with a deterministic sequential merge:
      // the final set is schedule-independent (set union is commutative)
      const std::size_t width = frontier_end - frontier_begin;
      const unsigned nt = std::min<unsigned>(opts.threads, 64);
      std::vector<std::vector<Mat>> chunks(nt);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t]() {
          std::size_t lo = frontier_begin + width * t / nt;
          std::size_t hi = frontier_begin + width * (t + 1) / nt;
          for (std::size_t i = lo; i < hi; ++i)
            for (const Mat& g : gens) {
              Mat h = mat_mul(f, out[i], g);
              if (!seen.count(mat_key(f, h))) chunks[t].push_back(h);
            }
        });
      for (auto& th : pool) th.join();
      for (const auto& chunk : chunks)
        for (const Mat& h : chunk)
          if (seen.insert(mat_key(f, h)).second) {
            out.push_back(h);
            if (out.size() > opts.budget) fail(Err::BudgetExceeded, "closure exceeds budget");
          }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

std::vector<Mat> enumerate_group_bfs(const GroupSpec& spec, const EnumOptions& opts) {
  return enumerate_group_bfs(spec, standard_generators(spec), opts);
}

namespace {

// Lean per-family membership for the ambient scan; avoids the allocation
// cost of contains() in the q^(n^2) loop.
struct AmbientChecker {
  const GroupSpec& spec;
  const Field& f;
  explicit AmbientChecker(const GroupSpec& s) : spec(s), f(s.field) {}

  bool operator()(const Mat& m) const {
    switch (spec.family) {
      case Family::Sp:
      case Family::SOOdd:
      case Family::SOEvenPlus: {
        const unsigned n = spec.n;
        // bilinear conditions col_i^T M col_j = M_{ij}, early exit
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = (spec.family == Family::Sp ? i + 1 : i); j < n; ++j) {
            felem acc = 0;
            for (unsigned a = 0; a < n; ++a) {
              felem ma = 0;
              for (unsigned b = 0; b < n; ++b)
                ma = f.add(ma, f.mul(spec.form.at(a, b), m.at(b, j)));
              acc = f.add(acc, f.mul(m.at(a, i), ma));
            }
            if (acc != spec.form.at(i, j)) return false;
          }
        if (spec.family != Family::Sp && mat_det(f, m) != 1) return false;
        return true;
      }
      default: return contains(spec, m);
    }
  }
};

}  // namespace

std::vector<Mat> enumerate_group_ambient(const GroupSpec& spec, const EnumOptions& opts) {
  const Field& f = spec.field;
  const unsigned cells = spec.n * spec.n;
  const std::uint64_t cap = 43'046'721;  // 3^16 ambient tuples
  double total_log = cells * std::log2(static_cast<double>(f.q()));
  if (total_log > std::log2(static_cast<double>(cap)) + 1e-9)
    fail(Err::BudgetExceeded, "ambient scan over " + std::to_string(cells) + " entries");
  AmbientChecker check(spec);
  std::vector<Mat> out;
  Mat m(f, spec.n);
  // odometer over all entry tuples
  while (true) {
    if (check(m)) {
      out.push_back(m);
      if (out.size() > opts.budget) fail(Err::BudgetExceeded, "ambient result exceeds budget");
    }
    unsigned pos = 0;
    while (pos < cells) {
      m.a[pos] = static_cast<felem>(m.a[pos] + 1);
      if (m.a[pos] < f.q()) break;
      m.a[pos] = 0;
      ++pos;
    }
    if (pos == cells) break;
  }
  return out;
}

std::string CensusReport::to_json() const {
  json j{{"label", label},        {"method", method},
         {"anchor", anchor},      {"count", big_json(count)},
         {"bound", big_json(bound)}, {"bound_is_lower", bound_is_lower},
         {"ok", ok},              {"used_delta_bound", used_delta_bound}};
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

CensusReport check_point_upper(const GroupSpec& spec, const VarietySpec& v, CountScope scope,
                               const EnumOptions& opts) {
  CensusReport rep;
  rep.label = v.label + " in " + spec.label();
  rep.anchor = "|V(F_q)| <= D q^d";
  const Field& f = spec.field;
  BigInt count = 0;
  if (scope == CountScope::Group) {
    rep.method = "bfs_closure";
    for (const Mat& g : enumerate_group_bfs(spec, opts))
      if (v.member(f, g)) ++count;
  } else {
    rep.method = "ambient_filter";
    const unsigned cells = spec.n * spec.n;
    const std::uint64_t cap = 43'046'721;
    double total_log = cells * std::log2(static_cast<double>(f.q()));
    if (total_log > std::log2(static_cast<double>(cap)) + 1e-9)
      fail(Err::BudgetExceeded, "ambient variety scan too large");
    Mat m(f, spec.n);
    while (true) {
      if (v.member(f, m)) ++count;
      unsigned pos = 0;
      while (pos < cells) {
        m.a[pos] = static_cast<felem>(m.a[pos] + 1);
        if (m.a[pos] < f.q()) break;
        m.a[pos] = 0;
        ++pos;
      }
      if (pos == cells) break;
    }
  }
  rep.count = count;
  rep.bound = v.deg_D * big_pow(BigInt(f.q()), v.dim_d);
  rep.ok = count <= rep.bound;
  rep.note = "d=" + std::to_string(v.dim_d) + ", D=" + big_str(v.deg_D);
  return rep;
}

std::vector<CensusReport> check_group_bounds(const GroupSpec& spec) {
  const BigInt q = spec.field.q();
  const BigInt order = group_order(spec);
  CensusReport lower;
  lower.label = spec.label();
  lower.method = "closed_form_order";
  lower.anchor = "|G(F_q)| >= q^(delta-r) (q-1)^r";
  lower.count = order;
  lower.bound = big_pow(q, spec.dim - spec.rank) * big_pow(q - 1, spec.rank);
  lower.bound_is_lower = true;
  lower.ok = order >= lower.bound;
  CensusReport upper;
  upper.label = spec.label();
  upper.method = "closed_form_order";
  upper.anchor = "|G(F_q)| <= 2 q^delta";
  upper.count = order;
  upper.bound = 2 * big_pow(q, spec.dim);
  upper.ok = order <= upper.bound;
  return {lower, upper};
}

EscapeThresholds escape_thresholds(const GroupSpec& spec, const BigInt& D) {
  if (D < 1) fail(Err::OutOfRange, "degree must be >= 1");
  EscapeThresholds t;
  t.langweil = BigInt(spec.rank) + spec.delta_bound * D;
  t.lwchev = 5 * BigInt(spec.rank + 1) * (spec.rank + 1) * D;
  t.lw4 = BigInt(spec.rank) + 4 * D;
  t.uses_delta_bound = true;
  return t;
}

std::vector<CensusReport> threshold_escape_check(const GroupSpec& spec, const VarietySpec& v,
                                                 const EnumOptions& opts) {
  EscapeThresholds t = escape_thresholds(spec, v.deg_D);
  const BigInt q = spec.field.q();
  const Field& f = spec.field;

  bool enumerable = group_order(spec) <= opts.budget;
  bool some_point_escapes = false;
  if (enumerable) {
    for (const Mat& g : enumerate_group_bfs(spec, opts))
      if (!v.member(f, g)) {
        some_point_escapes = true;
        break;
      }
  }

  auto mk = [&](const std::string& anchor, const BigInt& threshold, bool strict) {
    CensusReport rep;
    rep.label = v.label + " in " + spec.label();
    rep.method = enumerable ? "bfs_closure" : "threshold_only";
    rep.anchor = anchor;
    rep.bound = threshold;
    rep.used_delta_bound = anchor.find("Delta") != std::string::npos;
    bool applies = strict ? q > threshold : q >= threshold;
    if (!applies) {
      rep.ok = true;
      rep.note = "threshold not met; no claim";
    } else if (!enumerable) {
      rep.ok = true;
      rep.note = "threshold met; group too large to verify empirically";
    } else {
      rep.ok = some_point_escapes;
      rep.note = "threshold met; verified a rational point off V";
    }
    return rep;
  };
  return {mk("q > r + Delta*D", t.langweil, true), mk("q >= 5(r+1)^2 D", t.lwchev, false),
          mk("q > r + 4D", t.lw4, true)};
}

std::pair<BigInt, std::vector<bool>> torus_normalizer(const GroupSpec& spec,
                                                      const std::vector<Mat>& elems) {
  const Field& f = spec.field;
  std::vector<Mat> basis = torus_lie_basis(spec);
  const bool lie_test_valid = !(spec.family == Family::Sp && f.p() == 2);
  std::vector<bool> mask(elems.size(), false);
  BigInt count = 0;

  if (lie_test_valid) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto inv = mat_inverse(f, elems[i]);
      bool ok = true;
      for (const Mat& b : basis) {
        Mat conj = mat_mul(f, mat_mul(f, elems[i], b), *inv);
        if (!torus_shape(spec, conj)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        mask[i] = true;
        ++count;
      }
    }
    return {count, mask};
  }

  // Sp in characteristic 2: the Lie criterion degenerates, so conjugate a
  // regular torus element over an extension field instead.
  unsigned m = 1;
  while (big_pow(BigInt(f.q()), m) - 1 <= 2 * spec.rank) ++m;
  Field big = Field::make(f.p(), f.k() * (m == 1 ? 2 : m));
  // embed F_q into the extension via a root of the modulus
  std::vector<felem> embed(f.q(), 0);
  {
    felem root = 0;
    if (f.k() == 1) {
      for (felem v = 0; v < f.q(); ++v) embed[v] = v % static_cast<felem>(big.p());
      root = 1;  // prime subfield embeds canonically
      (void)root;
    } else {
      bool found = false;
      for (felem cand = 0; cand < big.q() && !found; ++cand) {
        felem acc = big.pow(cand, f.k());  // x^k
        felem val = acc;
        felem powc = 1;
        for (unsigned i = 0; i < f.k(); ++i) {
          val = big.add(val, big.mul(big.from_int(static_cast<std::int64_t>(f.modulus()[i])), powc));
          powc = big.mul(powc, cand);
        }
        if (val == 0) {
          found = true;
          for (felem v = 0; v < f.q(); ++v) {
            auto coeffs = f.decode(v);
            felem acc2 = 0, pw = 1;
            for (unsigned i = 0; i < f.k(); ++i) {
              acc2 = big.add(acc2, big.mul(big.from_int(static_cast<std::int64_t>(coeffs[i])), pw));
              pw = big.mul(pw, cand);
            }
            embed[v] = acc2;
          }
        }
      }
      if (!found) fail(Err::OutOfRange, "no subfield embedding found (internal)");
    }
  }
  // regular torus element: diagonal gamma^1..gamma^r with inverses, all distinct
  felem gamma = 2;
  for (felem cand = 2; cand < big.q(); ++cand) {
    std::vector<felem> vals;
    felem v = 1;
    bool ok = true;
    for (unsigned i = 0; i < spec.rank; ++i) {
      v = big.mul(v, cand);
      vals.push_back(v);
      vals.push_back(big.inv(v));
    }
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
      if (vals[i] == vals[i + 1]) ok = false;
    if (ok) {
      gamma = cand;
      break;
    }
  }
  Mat t0(big, spec.n);
  {
    felem v = 1;
    for (unsigned i = 0; i < spec.rank; ++i) {
      v = big.mul(v, gamma);
      t0.at(i, i) = v;
      t0.at(spec.rank + i, spec.rank + i) = big.inv(v);
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Mat h(big, spec.n);
    for (unsigned a = 0; a < spec.n; ++a)
      for (unsigned b = 0; b < spec.n; ++b) h.at(a, b) = embed[elems[i].at(a, b)];
    auto hi = mat_inverse(big, h);
    Mat conj = mat_mul(big, mat_mul(big, h, t0), *hi);
    bool diag = true;
    for (unsigned a = 0; a < spec.n && diag; ++a)
      for (unsigned b = 0; b < spec.n; ++b)
        if (a != b && conj.at(a, b) != 0) {
          diag = false;
          break;
        }
    if (diag) {
      mask[i] = true;
      ++count;
    }
  }
  return {count, mask};
}

std::string TorusCensusReport::to_json() const {
  json j{{"group_order", big_json(group_order)},
         {"torus_points", big_json(torus_points)},
         {"normalizer_points", big_json(normalizer_points)},
         {"conjugate_count", big_json(conjugate_count)},
         {"point_set_count", point_set_count},
         {"point_sets_differ", point_sets_differ},
         {"weyl_factor", big_json(weyl_factor)},
         {"conjugate_bound_ok", conjugate_bound_ok},
         {"weyl_bound_ok", weyl_bound_ok}};
  return j.dump();
}

TorusCensusReport torus_conjugate_census(const GroupSpec& spec, const EnumOptions& opts) {
  const Field& f = spec.field;
  TorusCensusReport rep;
  std::vector<Mat> elems = enumerate_group_bfs(spec, opts);
  std::vector<Mat> torus = torus_points(spec);
  rep.group_order = elems.size();
  rep.torus_points = torus.size();

  auto [ncount, mask] = torus_normalizer(spec, elems);
  rep.normalizer_points = ncount;
  rep.conjugate_count = rep.group_order / ncount;
  rep.weyl_factor = ncount / BigInt(torus.size());

  // distinct conjugate point sets, exact set semantics via canonical keys
  std::unordered_set<std::string> point_sets;
  for (const Mat& h : elems) {
    auto hi = mat_inverse(f, h);
    std::vector<MatKey> keys;
    keys.reserve(torus.size());
    for (const Mat& t : torus) keys.push_back(mat_key(f, mat_mul(f, mat_mul(f, h, t), *hi)));
    std::sort(keys.begin(), keys.end(), [](const MatKey& a, const MatKey& b) { return a.w < b.w; });
    std::string canon;
    canon.reserve(keys.size() * sizeof(MatKey));
    for (const MatKey& k : keys)
      canon.append(reinterpret_cast<const char*>(k.w.data()), sizeof(k.w));
    point_sets.insert(std::move(canon));
  }
  rep.point_set_count = point_sets.size();
  rep.point_sets_differ = BigInt(rep.point_set_count) != rep.conjugate_count;

  const BigInt q = f.q();
  const unsigned r = spec.rank;
  rep.conjugate_bound_ok =
      rep.conjugate_count * big_pow(BigInt(6) * r, r) >= big_pow(q, spec.dim - r);
  BigInt weyl_bound = big_pow(BigInt(2), r);
  for (unsigned i = 2; i <= r; ++i) weyl_bound *= i;
  rep.weyl_bound_ok = rep.weyl_factor <= weyl_bound;
  return rep;
}

std::string LieCensusReport::to_json() const {
  json j{{"nullity", nullity}, {"dim", dim},
         {"count", big_json(count)}, {"expected", big_json(expected)},
         {"ok", ok},           {"enumerated", enumerated}};
  return j.dump();
}

LieCensusReport lie_census(const GroupSpec& spec, std::uint64_t enumerate_cap) {
  const Field& f = spec.field;
  LieCensusReport rep;
  std::vector<Mat> basis = lie_basis(spec);
  rep.nullity = static_cast<unsigned>(basis.size());
  rep.dim = spec.dim;
  rep.count = big_pow(BigInt(f.q()), rep.nullity);
  rep.expected = big_pow(BigInt(f.q()), spec.dim);
  rep.ok = rep.count == rep.expected;

  // when feasible, walk the span and re-verify membership pointwise
  if (rep.count <= enumerate_cap) {
    std::vector<unsigned> idx(basis.size(), 0);
    std::uint64_t verified = 0;
    Mat x(f, spec.n);
    while (true) {
      // rebuild from coefficients (codes are field elements)
      std::fill(x.a.begin(), x.a.end(), 0);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (idx[i] == 0) continue;
        felem c = static_cast<felem>(idx[i]);
        for (std::size_t e = 0; e < x.a.size(); ++e)
          x.a[e] = f.add(x.a[e], f.mul(c, basis[i].a[e]));
      }
      if (!lie_contains(spec, x))
        fail(Err::OutOfRange, "lie basis span left the algebra (internal)");
      ++verified;
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == f.q()) idx[pos++] = 0;
      if (pos == idx.size()) break;
      if (idx.empty()) break;
    }
    rep.enumerated = verified;
  }
  return rep;
}

std::string CayleyCensusReport::to_json() const {
  json j{{"lie_total", lie_total},
         {"lie_off_singular", lie_off_singular},
         {"group_total", group_total},
         {"group_off_singular", group_off_singular},
         {"involution_ok", involution_ok},
         {"bijection_ok", bijection_ok}};
  return j.dump();
}

CayleyCensusReport cayley_census(const GroupSpec& spec, const EnumOptions& opts) {
  const Field& f = spec.field;
  CayleyCensusReport rep;
  std::vector<Mat> basis = lie_basis(spec);
  BigInt total = big_pow(BigInt(f.q()), basis.size());
  if (total > opts.budget) fail(Err::BudgetExceeded, "Lie algebra too large to enumerate");

  Mat id = mat_identity(f, spec.n);
  std::unordered_set<MatKey, MatKeyHash> image;
  bool involution_ok = true;
  std::vector<unsigned> idx(basis.size(), 0);
  Mat x(f, spec.n);
  while (true) {
    std::fill(x.a.begin(), x.a.end(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (idx[i] == 0) continue;
      felem c = static_cast<felem>(idx[i]);
      for (std::size_t e = 0; e < x.a.size(); ++e)
        x.a[e] = f.add(x.a[e], f.mul(c, basis[i].a[e]));
    }
    ++rep.lie_total;
    if (mat_det(f, mat_add(f, id, x)) != 0) {
      ++rep.lie_off_singular;
      Mat g = cayley(spec, x);
      if (!contains(spec, g)) involution_ok = false;
      if (mat_det(f, mat_add(f, id, g)) == 0)
        involution_ok = false;  // image must avoid the singular locus
      else if (!(cayley(spec, g) == x))
        involution_ok = false;
      image.insert(mat_key(f, g));
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == f.q()) idx[pos++] = 0;
    if (pos == idx.size()) break;
    if (idx.empty()) break;
  }
  rep.involution_ok = involution_ok;

  for (const Mat& g : enumerate_group_bfs(spec, opts)) {
    ++rep.group_total;
    if (mat_det(f, mat_add(f, id, g)) != 0) ++rep.group_off_singular;
  }
  rep.bijection_ok = involution_ok && image.size() == rep.group_off_singular &&
                     rep.lie_off_singular == rep.group_off_singular;
  return rep;
}

}  // namespace growthlab
