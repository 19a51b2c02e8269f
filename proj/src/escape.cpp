#include "growthlab/escape.hpp"

#include <algorithm>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace growthlab {

using json = nlohmann::json;

GenSet GenSet::standard(const GroupSpec& spec) {
  GenSet a;
  a.elems = standard_generators(spec);
  a.label = standard_generator_label(spec);
  a.contains_e = true;
  a.symmetric = true;
  return a;
}

GenSet GenSet::from(const GroupSpec& spec, std::vector<Mat> elems, const std::string& label) {
  GenSet a;
  a.elems = std::move(elems);
  a.label = label;
  const Field& f = spec.field;
  for (const Mat& g : a.elems) {
    if (!contains(spec, g)) fail(Err::NotInGroup, "generator outside the group");
    if (mat_is_identity(g)) a.contains_e = true;
  }
  a.symmetric = true;
  for (const Mat& g : a.elems) {
    auto gi = mat_inverse(f, g);
    bool has = false;
    for (const Mat& h : a.elems)
      if (h == *gi) {
        has = true;
        break;
      }
    if (!has) {
      a.symmetric = false;
      break;
    }
  }
  return a;
}

std::string EscapeResult::to_json() const {
  json j{{"k", k},
         {"bound_k", bound_k.str()},
         {"escaped", escaped},
         {"variety", variety},
         {"word", word},
         {"witness", witness.a}};
  return j.dump();
}

namespace {

struct BfsNode {
  Mat g;
  std::int64_t parent;  // -1 for the root
  unsigned gen;
};

BigInt escape_bound(unsigned d, const BigInt& D) {
  if (D == 1) return BigInt(d) + 1;
  return 2 * big_pow(D, static_cast<std::uint64_t>(d) + 1);
}

}  // namespace

EscapeResult escape(const GroupSpec& spec, const GenSet& A, const VarietySpec& v, const Mat& x,
                    const EnumOptions& opts) {
  if (!A.contains_e) fail(Err::OutOfRange, "escape requires e in A");
  const Field& f = spec.field;
  EscapeResult res;
  res.variety = v.label;
  res.bound_k = escape_bound(v.dim_d, v.deg_D);

  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<BfsNode> nodes;
  nodes.push_back({mat_identity(f, spec.n), -1, 0});
  seen.insert(mat_key(f, nodes[0].g));

  auto emit = [&](std::size_t node_idx, std::uint64_t k) {
    res.k = k;
    res.escaped = true;
    res.witness = nodes[node_idx].g;
    std::vector<unsigned> word;
    for (std::int64_t cur = static_cast<std::int64_t>(node_idx); cur > 0;
         cur = nodes[cur].parent)
      word.push_back(nodes[cur].gen);
    std::reverse(word.begin(), word.end());
    res.word = std::move(word);
    if (BigInt(res.k) > res.bound_k)
      fail(Err::BoundViolated, "escape length " + std::to_string(res.k) + " exceeds bound " +
                                   res.bound_k.str() + " for " + v.label);
    return res;
  };

  // layer 0: the empty word
  if (!v.member(f, mat_mul(f, nodes[0].g, x))) return emit(0, 0);

  std::size_t layer_begin = 0, layer_end = nodes.size();
  std::uint64_t k = 0;
  while (layer_begin < layer_end) {
    ++k;
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (unsigned gi = 0; gi < A.elems.size(); ++gi) {
        Mat h = mat_mul(f, nodes[i].g, A.elems[gi]);
        if (!seen.insert(mat_key(f, h)).second) continue;
        nodes.push_back({std::move(h), static_cast<std::int64_t>(i), gi});
        if (nodes.size() > opts.budget) fail(Err::BudgetExceeded, "escape search budget");
        std::size_t ni = nodes.size() - 1;
        if (!v.member(f, mat_mul(f, nodes[ni].g, x))) return emit(ni, k);
      }
    layer_begin = layer_end;
    layer_end = nodes.size();
  }
  fail(Err::NoEscapePossible, "the whole orbit of x lies in " + v.label);
}

std::string RsSearchResult::to_json() const {
  json j{{"k", k},
         {"bound", bound.str()},
         {"paper_bound", paper_bound.str()},
         {"witness", witness.a}};
  return j.dump();
}

RsSearchResult find_regular_semisimple(const GroupSpec& spec, const GenSet& A,
                                       const EnumOptions& opts) {
  if (!A.contains_e) fail(Err::OutOfRange, "search requires e in A");
  const Field& f = spec.field;
  RsSearchResult res;
  // the non-regular locus has degree n(n-1) in the appropriate embedding
  unsigned nd = spec.n;
  if (spec.family == Family::SL && spec.embedding == Embedding::BlockContragredient)
    nd = spec.rank + 1;
  if (spec.family == Family::SUTwisted) nd = spec.su_n;
  BigInt D = BigInt(nd) * (nd - 1);
  res.bound = 2 * big_pow(D, spec.dim);  // escape bound with d <= delta-1
  res.paper_bound =
      big_pow(D, static_cast<std::uint64_t>(spec.n) * spec.n) * spec.n * spec.n;

  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<Mat> cur{mat_identity(f, spec.n)};
  seen.insert(mat_key(f, cur[0]));
  std::uint64_t k = 0;
  while (!cur.empty()) {
    for (const Mat& g : cur)
      if (is_regular_semisimple(spec, g)) {
        res.witness = g;
        res.k = k;
        if (BigInt(k) > res.bound)
          fail(Err::BoundViolated, "regular semisimple search exceeded its bound");
        return res;
      }
    ++k;
    std::vector<Mat> next;
    for (const Mat& g : cur)
      for (const Mat& a : A.elems) {
        Mat h = mat_mul(f, g, a);
        if (seen.insert(mat_key(f, h)).second) {
          next.push_back(std::move(h));
          if (seen.size() > opts.budget)
            fail(Err::BudgetExceeded, "regular semisimple search budget");
        }
      }
    cur = std::move(next);
  }
  fail(Err::NoRegularSemisimple, "no regular semisimple element reachable (must not happen)");
}

}  // namespace growthlab
