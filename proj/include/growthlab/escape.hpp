#pragma once

#include <string>
#include <vector>

#include "growthlab/census.hpp"
#include "growthlab/variety.hpp"

namespace growthlab {

// A generating set; e must be a member for every escape/growth use.
struct GenSet {
  std::vector<Mat> elems;
  std::string label;
  bool contains_e = false;
  bool symmetric = false;

  static GenSet standard(const GroupSpec& spec);
  static GenSet from(const GroupSpec& spec, std::vector<Mat> elems, const std::string& label);
};

struct EscapeResult {
  Mat witness;
  std::vector<unsigned> word;  // generator indices; empty word means e
  std::uint64_t k = 0;
  BigInt bound_k;
  bool escaped = false;
  std::string variety;
  std::string to_json() const;
};

// Layered breadth-first search over words in A: the returned witness g is
// the first (layer order, then insertion order within a layer) element with
// g x off V. k is the minimal word length, so k <= bound_k is the
// sharpest testable form of the escape bound.
EscapeResult escape(const GroupSpec& spec, const GenSet& A, const VarietySpec& v, const Mat& x,
                    const EnumOptions& opts = {});

struct RsSearchResult {
  Mat witness;
  std::uint64_t k = 0;
  BigInt bound;        // 2 (n(n-1))^delta via the escape bound
  BigInt paper_bound;  // looser n^2 deg(W)^(n^2)
  std::string to_json() const;
};

// First regular semisimple element in the layered word search.
RsSearchResult find_regular_semisimple(const GroupSpec& spec, const GenSet& A,
                                       const EnumOptions& opts = {});

}  // namespace growthlab
