#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/escape.hpp"
#include "growthlab/ledger.hpp"

namespace growthlab {

// Per-radius ball record: ball[m-1] = |A^m|, plus tracked variety counts.
struct GrowthProfile {
  std::string group;
  std::string generators;
  BigInt group_order = 0;
  std::vector<std::uint64_t> ball;
  std::map<std::string, std::vector<std::uint64_t>> variety_counts;
  std::optional<unsigned> diameter;

  std::uint64_t ball_at(unsigned m) const;  // saturating lookup, 1-based
  std::string to_csv() const;
  std::string to_json() const;
};

// Exact layered ball sizes for m = 1..m_max (or saturation), with
// per-radius counts |A^m ∩ V| for each tracked variety.
GrowthProfile ball_sizes(const GroupSpec& spec, const GenSet& A, unsigned m_max,
                         const std::vector<VarietySpec>& tracked = {},
                         const EnumOptions& opts = {});

// Minimal m with (A ∪ {e})^m = G.
unsigned diameter(const GroupSpec& spec, const GenSet& A, const EnumOptions& opts = {});

struct ConcentrationRow {
  unsigned m = 0;
  std::uint64_t ball = 0;
  std::uint64_t hits = 0;
  double eps = 0.0;         // log|A^m ∩ V| / log|A^m|
  double prediction = 0.0;  // d / delta
  bool informative = false; // pre-saturation window |A^m| <= |G|^0.9
};
std::vector<ConcentrationRow> concentration_profile(const GroupSpec& spec, const GenSet& A,
                                                    const VarietySpec& v, unsigned m_max,
                                                    const EnumOptions& opts = {});

struct NpCheckReport {
  bool applicable = false;
  BigInt threshold_cubed;   // 27 q^(3 delta - r); |A|^3 is compared against it
  std::uint64_t a_size = 0;
  unsigned radius = 0;      // the ball radius used as A
  bool cube_is_group = false;
  bool ok = false;
  std::string to_json() const;
};
// If |A| >= 3 q^(delta - r/3) (exactly: |A|^3 >= 27 q^(3 delta - r)),
// verify A^3 = G. A is the radius-`radius` ball of gens.
NpCheckReport np_check(const GroupSpec& spec, const GenSet& gens, unsigned radius,
                       const EnumOptions& opts = {});

struct ToriClassification {
  std::uint64_t tori_total = 0;
  std::uint64_t involved = 0;
  unsigned k = 0;
  unsigned m = 0;
  int case_realized = 0;  // 1, 2, or 0 when no torus is involved
  // fibre statistics for a sampled witness torus
  std::uint64_t max_fibre = 0;
  std::uint64_t fibre_bound = 0;  // |A^{2m} ∩ T'|
  bool fibre_ok = false;
  std::string to_json() const;
};
// Classifies every conjugate of the diagonal torus as involved or not
// (A^k ∩ T' contains a regular semisimple element), determines which case
// of the pivoting dichotomy holds, and measures psi fibres.
ToriClassification involved_tori_experiment(const GroupSpec& spec, const GenSet& A, unsigned k,
                                            unsigned m = 1, const EnumOptions& opts = {});

std::uint64_t product_probe(const GroupSpec& spec, const std::vector<Mat>& S,
                            const std::vector<Mat>& S2, const Mat& g);

struct ProductProbeSweep {
  std::uint64_t total_g = 0;
  std::uint64_t grew = 0;  // # of g with |S g S'| > |S|
  std::string to_json() const;
};
ProductProbeSweep product_probe_sweep(const GroupSpec& spec, const std::vector<Mat>& S,
                                      const std::vector<Mat>& S2, const EnumOptions& opts = {});

struct GrowthCertificate {
  unsigned m = 0;
  bool first_branch = false;  // A^{6m} = G
  std::uint64_t ball_m = 0, ball_3m = 0, ball_6m = 0;
  double growth_ratio = 0.0;  // |A^{3m}| / |A^m|
  double measured_eta = 0.0;  // log(|A^{3m}|/|A^m|) / log|A^m|
  // the paper-shaped constants attached symbolically; vacuous at desk scale
  std::string paper_c = "2^2^O(r^2 log r)";
  std::string paper_eta = "1/O(r^2)";
  std::string paper_ell0 = "(2r)^O(r^2)";
  std::string paper_ell1 = "O(r^2)";
  std::string to_json() const;
};
GrowthCertificate growth_certificate(const GroupSpec& spec, const GenSet& A, unsigned m,
                                     const EnumOptions& opts = {});

// Wires a profile into the exact main-inequality check at m = 1.
MainInequalityReport main_inequality_report(const GroupSpec& spec, const GrowthProfile& profile,
                                            const VarietySpec& v);

}  // namespace growthlab
