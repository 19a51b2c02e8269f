#include "growthlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace growthlab {

using json = nlohmann::json;

std::uint64_t GrowthProfile::ball_at(unsigned m) const {
  if (ball.empty()) return 0;
  if (m == 0) return 1;
  if (m <= ball.size()) return ball[m - 1];
  return ball.back();
}

std::string GrowthProfile::to_csv() const {
  std::ostringstream os;
  os << "m,ball";
  for (const auto& [name, _] : variety_counts) os << "," << name;
  os << "\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    os << (i + 1) << "," << ball[i];
    for (const auto& [_, counts] : variety_counts) os << "," << counts[i];
    os << "\n";
  }
  return os.str();
}

std::string GrowthProfile::to_json() const {
  json j{{"group", group},
         {"generators", generators},
         {"group_order", group_order.str()},
         {"ball", ball}};
  if (diameter) j["diameter"] = *diameter;
  json vc = json::object();
  for (const auto& [name, counts] : variety_counts) vc[name] = counts;
  j["variety_counts"] = vc;
  return j.dump();
}

GrowthProfile ball_sizes(const GroupSpec& spec, const GenSet& A, unsigned m_max,
                         const std::vector<VarietySpec>& tracked, const EnumOptions& opts) {
  if (!A.contains_e) fail(Err::OutOfRange, "ball growth requires e in A");
  const Field& f = spec.field;
  GrowthProfile prof;
  prof.group = spec.label();
  prof.generators = A.label;
  prof.group_order = group_order(spec);

  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<Mat> all{mat_identity(f, spec.n)};
  seen.insert(mat_key(f, all[0]));
  std::vector<std::uint64_t> var_hits(tracked.size(), 0);
  for (std::size_t t = 0; t < tracked.size(); ++t)
    if (tracked[t].member(f, all[0])) ++var_hits[t];

  std::size_t layer_begin = 0, layer_end = all.size();
  for (unsigned m = 1; m <= m_max; ++m) {
    if (opts.threads <= 1 || layer_end - layer_begin < 256) {
      for (std::size_t i = layer_begin; i < layer_end; ++i)
        for (const Mat& g : A.elems) {
          Mat h = mat_mul(f, all[i], g);
          if (!seen.insert(mat_key(f, h)).second) continue;
          for (std::size_t t = 0; t < tracked.size(); ++t)
            if (tracked[t].member(f, h)) ++var_hits[t];
          all.push_back(std::move(h));
          if (all.size() > opts.budget) fail(Err::BudgetExceeded, "ball exceeds budget");
        }
    } else {
      const std::size_t width = layer_end - layer_begin;
      const unsigned nt = std::min<unsigned>(opts.threads, 64);
      std::vector<std::vector<Mat>> chunks(nt);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t]() {
          std::size_t lo = layer_begin + width * t / nt;
          std::size_t hi = layer_begin + width * (t + 1) / nt;
          for (std::size_t i = lo; i < hi; ++i)
            for (const Mat& g : A.elems) {
              Mat h = mat_mul(f, all[i], g);
              if (!seen.count(mat_key(f, h))) chunks[t].push_back(h);
            }
        });
      for (auto& th : pool) th.join();
      for (auto& chunk : chunks)
        for (Mat& h : chunk) {
          if (!seen.insert(mat_key(f, h)).second) continue;
          for (std::size_t t = 0; t < tracked.size(); ++t)
            if (tracked[t].member(f, h)) ++var_hits[t];
          all.push_back(std::move(h));
          if (all.size() > opts.budget) fail(Err::BudgetExceeded, "ball exceeds budget");
        }
    }
    bool grew = all.size() > static_cast<std::size_t>(layer_end);
    layer_begin = layer_end;
    layer_end = all.size();
    prof.ball.push_back(all.size());
    for (std::size_t t = 0; t < tracked.size(); ++t)
      prof.variety_counts[tracked[t].label].push_back(var_hits[t]);
    if (BigInt(all.size()) == prof.group_order && !prof.diameter) prof.diameter = m;
    if (!grew) break;
  }
  return prof;
}

unsigned diameter(const GroupSpec& spec, const GenSet& A, const EnumOptions& opts) {
  GenSet a = A;
  if (!a.contains_e) {
    a.elems.insert(a.elems.begin(), mat_identity(spec.field, spec.n));
    a.contains_e = true;
  }
  GrowthProfile prof = ball_sizes(spec, a, 1u << 20, {}, opts);
  if (!prof.diameter) fail(Err::NotGenerating, "A does not generate G");
  return *prof.diameter;
}

std::vector<ConcentrationRow> concentration_profile(const GroupSpec& spec, const GenSet& A,
                                                    const VarietySpec& v, unsigned m_max,
                                                    const EnumOptions& opts) {
  GrowthProfile prof = ball_sizes(spec, A, m_max, {v}, opts);
  const auto& hits = prof.variety_counts.at(v.label);
  const double logG = std::log(prof.group_order.convert_to<double>());
  std::vector<ConcentrationRow> rows;
  for (std::size_t i = 0; i < prof.ball.size(); ++i) {
    ConcentrationRow r;
    r.m = static_cast<unsigned>(i + 1);
    r.ball = prof.ball[i];
    r.hits = hits[i];
    r.prediction = static_cast<double>(v.dim_d) / spec.dim;
    r.eps = (r.hits > 0 && r.ball > 1)
                ? std::log(static_cast<double>(r.hits)) / std::log(static_cast<double>(r.ball))
                : 0.0;
    r.informative = std::log(static_cast<double>(r.ball)) <= 0.9 * logG;
    rows.push_back(r);
  }
  return rows;
}

std::string NpCheckReport::to_json() const {
  json j{{"applicable", applicable}, {"threshold_cubed", threshold_cubed.str()},
         {"a_size", a_size},         {"radius", radius},
         {"cube_is_group", cube_is_group}, {"ok", ok}};
  return j.dump();
}

NpCheckReport np_check(const GroupSpec& spec, const GenSet& gens, unsigned radius,
                       const EnumOptions& opts) {
  NpCheckReport rep;
  rep.radius = radius;
  const BigInt q = spec.field.q();
  rep.threshold_cubed = 27 * big_pow(q, 3 * static_cast<std::uint64_t>(spec.dim) - spec.rank);
  GrowthProfile prof = ball_sizes(spec, gens, 3 * radius, {}, opts);
  rep.a_size = prof.ball_at(radius);
  BigInt a3 = BigInt(rep.a_size) * rep.a_size * rep.a_size;
  rep.applicable = a3 >= rep.threshold_cubed;
  if (rep.applicable) {
    // A = ball of the given radius, so A^3 is the ball of radius 3*radius
    rep.cube_is_group = BigInt(prof.ball_at(3 * radius)) == prof.group_order;
    rep.ok = rep.cube_is_group;
  } else {
    rep.ok = true;  // not applicable: nothing to verify
  }
  return rep;
}

std::string ToriClassification::to_json() const {
  json j{{"tori_total", tori_total}, {"involved", involved},
         {"k", k},                   {"m", m},
         {"case", case_realized},    {"max_fibre", max_fibre},
         {"fibre_bound", fibre_bound}, {"fibre_ok", fibre_ok}};
  return j.dump();
}

namespace {

std::string canon_set_key(const Field& f, std::vector<Mat> pts) {
  std::vector<MatKey> keys;
  keys.reserve(pts.size());
  for (const Mat& p : pts) keys.push_back(mat_key(f, p));
  std::sort(keys.begin(), keys.end(), [](const MatKey& a, const MatKey& b) { return a.w < b.w; });
  std::string canon;
  canon.reserve(keys.size() * sizeof(MatKey));
  for (const MatKey& k : keys)
    canon.append(reinterpret_cast<const char*>(k.w.data()), sizeof(k.w));
  return canon;
}

}  // namespace

ToriClassification involved_tori_experiment(const GroupSpec& spec, const GenSet& A, unsigned k,
                                            unsigned m, const EnumOptions& opts) {
  const Field& f = spec.field;
  ToriClassification rep;
  rep.k = k;
  rep.m = m;

  std::vector<Mat> elems = enumerate_group_bfs(spec, opts);
  std::vector<Mat> torus = torus_points(spec);

  // distinct conjugate tori as point sets, with one conjugating representative
  std::map<std::string, Mat> tori;
  for (const Mat& h : elems) {
    auto hi = mat_inverse(f, h);
    std::vector<Mat> conj;
    conj.reserve(torus.size());
    for (const Mat& t : torus) conj.push_back(mat_mul(f, mat_mul(f, h, t), *hi));
    tori.emplace(canon_set_key(f, conj), h);
  }
  rep.tori_total = tori.size();

  // explicit balls A^k, A^m, A^{2m} (snapshots saturate if BFS stops early)
  std::unordered_set<MatKey, MatKeyHash> ball_k, ball_2m;
  std::vector<Mat> ball_m_elems;
  {
    std::unordered_set<MatKey, MatKeyHash> seen;
    std::vector<Mat> all{mat_identity(f, spec.n)};
    seen.insert(mat_key(f, all[0]));
    auto snapshot_keys = [&](std::unordered_set<MatKey, MatKeyHash>& dst) {
      dst.clear();
      for (const Mat& g : all) dst.insert(mat_key(f, g));
    };
    if (k == 0) ball_k.insert(mat_key(f, all[0]));
    std::size_t lb = 0, le = all.size();
    const unsigned max_step = std::max(k, 2 * m);
    for (unsigned step = 1; step <= max_step; ++step) {
      for (std::size_t i = lb; i < le; ++i)
        for (const Mat& g : A.elems) {
          Mat h = mat_mul(f, all[i], g);
          if (seen.insert(mat_key(f, h)).second) all.push_back(std::move(h));
        }
      lb = le;
      le = all.size();
      if (step == k) snapshot_keys(ball_k);
      if (step == m) ball_m_elems = all;
      if (step == 2 * m) snapshot_keys(ball_2m);
      if (lb == le) break;  // saturated
    }
    if (ball_k.empty()) snapshot_keys(ball_k);
    if (ball_m_elems.empty()) ball_m_elems = all;
    if (ball_2m.empty()) snapshot_keys(ball_2m);
  }

  // classify each torus: involved iff A^k ∩ T' has a regular semisimple point
  std::map<std::string, bool> involved_map;
  std::map<std::string, Mat> rs_witness;  // a regular semisimple g' in A^k ∩ T'
  for (const auto& [key, h] : tori) {
    auto hi = mat_inverse(f, h);
    bool inv = false;
    Mat wit;
    for (const Mat& t : torus) {
      Mat c = mat_mul(f, mat_mul(f, h, t), *hi);
      if (ball_k.count(mat_key(f, c)) && is_regular_semisimple(spec, c)) {
        inv = true;
        wit = c;
        break;
      }
    }
    involved_map[key] = inv;
    if (inv) rs_witness[key] = wit;
    if (inv) ++rep.involved;
  }

  // dichotomy: all conjugates involved (case 2), or an A-edge from an
  // involved torus to a non-involved one exists (case 1)
  if (rep.involved == rep.tori_total && rep.tori_total > 0) {
    rep.case_realized = 2;
  } else if (rep.involved > 0) {
    rep.case_realized = 1;
  } else {
    rep.case_realized = 0;  // no split torus involved at this k
  }

  // fibre statistics for psi(a) = a g' a^-1. In case 1 the map lives on the
  // non-involved torus T' = h T h^-1 with g' = h g h^-1 for g regular
  // semisimple in A^k ∩ T and h in A; in case 2 any involved torus works.
  if (rep.involved > 0) {
    Mat gprime;                 // regular semisimple element of T'
    Mat conj_rep;               // element conjugating the diagonal torus to T'
    bool have_witness = false;
    if (rep.case_realized == 1) {
      for (const auto& [kk, inv] : involved_map) {
        if (!inv) continue;
        const Mat& h0 = tori.at(kk);
        auto h0i = mat_inverse(f, h0);
        for (const Mat& a : A.elems) {
          std::vector<Mat> conj;
          auto ai = mat_inverse(f, a);
          for (const Mat& t : torus) {
            Mat base = mat_mul(f, mat_mul(f, h0, t), *h0i);
            conj.push_back(mat_mul(f, mat_mul(f, a, base), *ai));
          }
          std::string ck = canon_set_key(f, conj);
          auto it = involved_map.find(ck);
          if (it != involved_map.end() && !it->second) {
            const Mat& g0 = rs_witness.at(kk);
            gprime = mat_mul(f, mat_mul(f, a, g0), *ai);
            conj_rep = mat_mul(f, a, h0);
            have_witness = true;
            break;
          }
        }
        if (have_witness) break;
      }
    }
    if (!have_witness) {
      const auto& [kk, wit] = *rs_witness.begin();
      gprime = wit;
      conj_rep = tori.at(kk);
      have_witness = true;
    }
    std::map<std::string, std::uint64_t> fibres;
    for (const Mat& a : ball_m_elems) {
      auto ai = mat_inverse(f, a);
      Mat img = mat_mul(f, mat_mul(f, a, gprime), *ai);
      MatKey mk = mat_key(f, img);
      std::string s(reinterpret_cast<const char*>(mk.w.data()), sizeof(mk.w));
      ++fibres[s];
    }
    for (const auto& [_, c] : fibres) rep.max_fibre = std::max(rep.max_fibre, c);
    // bound: |A^{2m} ∩ T'(F_q)|
    auto ci = mat_inverse(f, conj_rep);
    std::uint64_t bound = 0;
    for (const Mat& t : torus) {
      Mat c = mat_mul(f, mat_mul(f, conj_rep, t), *ci);
      if (ball_2m.count(mat_key(f, c))) ++bound;
    }
    rep.fibre_bound = bound;
    rep.fibre_ok = rep.max_fibre <= rep.fibre_bound;
  }
  return rep;
}

std::uint64_t product_probe(const GroupSpec& spec, const std::vector<Mat>& S,
                            const std::vector<Mat>& S2, const Mat& g) {
  const Field& f = spec.field;
  std::unordered_set<MatKey, MatKeyHash> out;
  for (const Mat& s : S) {
    Mat sg = mat_mul(f, s, g);
    for (const Mat& s2 : S2) out.insert(mat_key(f, mat_mul(f, sg, s2)));
  }
  return out.size();
}

std::string ProductProbeSweep::to_json() const {
  json j{{"total_g", total_g}, {"grew", grew}};
  return j.dump();
}

ProductProbeSweep product_probe_sweep(const GroupSpec& spec, const std::vector<Mat>& S,
                                      const std::vector<Mat>& S2, const EnumOptions& opts) {
  ProductProbeSweep rep;
  for (const Mat& g : enumerate_group_bfs(spec, opts)) {
    ++rep.total_g;
    if (product_probe(spec, S, S2, g) > S.size()) ++rep.grew;
  }
  return rep;
}

std::string GrowthCertificate::to_json() const {
  json j{{"m", m},
         {"first_branch", first_branch},
         {"ball_m", ball_m},
         {"ball_3m", ball_3m},
         {"ball_6m", ball_6m},
         {"growth_ratio", growth_ratio},
         {"measured_eta", measured_eta},
         {"paper_c", paper_c},
         {"paper_eta", paper_eta},
         {"paper_ell0", paper_ell0},
         {"paper_ell1", paper_ell1},
         {"note", "paper inequality is vacuous at desk scale; measured analogues recorded"}};
  return j.dump();
}

GrowthCertificate growth_certificate(const GroupSpec& spec, const GenSet& A, unsigned m,
                                     const EnumOptions& opts) {
  GrowthCertificate cert;
  cert.m = m;
  GrowthProfile prof = ball_sizes(spec, A, 6 * m, {}, opts);
  cert.ball_m = prof.ball_at(m);
  cert.ball_3m = prof.ball_at(3 * m);
  cert.ball_6m = prof.ball_at(6 * m);
  cert.first_branch = BigInt(cert.ball_6m) == prof.group_order;
  cert.growth_ratio = static_cast<double>(cert.ball_3m) / static_cast<double>(cert.ball_m);
  cert.measured_eta = cert.ball_m > 1
                          ? std::log(cert.growth_ratio) / std::log(static_cast<double>(cert.ball_m))
                          : 0.0;
  return cert;
}

MainInequalityReport main_inequality_report(const GroupSpec& spec, const GrowthProfile& profile,
                                            const VarietySpec& v) {
  BigInt c2_radius = c2(1, spec.dim, spec.iota, spec.n);
  // the profile must reach C2(1) or saturation
  bool saturated = !profile.ball.empty() && BigInt(profile.ball.back()) == profile.group_order;
  if (!saturated && BigInt(profile.ball.size()) < c2_radius)
    fail(Err::InsufficientProfile, "profile shorter than C2(1) and not saturated");
  auto it = profile.variety_counts.find(v.label);
  if (it == profile.variety_counts.end() || it->second.empty())
    fail(Err::InsufficientProfile, "variety not tracked in profile");
  BigInt lhs = it->second.front();  // |A^1 ∩ V|
  unsigned idx = c2_radius > BigInt(profile.ball.size())
                     ? static_cast<unsigned>(profile.ball.size())
                     : c2_radius.convert_to<unsigned>();
  BigInt ball_c2 = profile.ball[idx - 1];
  return main_inequality_check(v.label, lhs, ball_c2, c2_radius, v.dim_d, v.deg_D, spec.dim,
                               profile.group_order);
}

}  // namespace growthlab
