#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growthlab/group.hpp"
#include "growthlab/variety.hpp"

namespace growthlab {

struct EnumOptions {
  std::uint64_t budget = 1'000'000;  // max group order to enumerate
  unsigned threads = 1;
};

// Exhaustive element lists. Both methods yield each element exactly once;
// tests check they agree as sets.
std::vector<Mat> enumerate_group_bfs(const GroupSpec& spec, const std::vector<Mat>& gens,
                                     const EnumOptions& opts = {});
std::vector<Mat> enumerate_group_bfs(const GroupSpec& spec, const EnumOptions& opts = {});
// Scans all q^(n^2) ambient matrices; refuses above 3^16 tuples.
std::vector<Mat> enumerate_group_ambient(const GroupSpec& spec, const EnumOptions& opts = {});

struct CensusReport {
  std::string label;
  std::string method;
  std::string anchor;        // which bound this row checks
  BigInt count = 0;
  BigInt bound = 0;
  bool bound_is_lower = false;
  bool ok = false;
  bool used_delta_bound = false;
  std::string note;
  std::string to_json() const;
};

enum class CountScope { Group, Ambient };

// Exhaustive |V| against D q^d.
CensusReport check_point_upper(const GroupSpec& spec, const VarietySpec& v, CountScope scope,
                               const EnumOptions& opts = {});

// q^(delta-r) (q-1)^r <= |G| <= 2 q^delta, from the closed-form order.
std::vector<CensusReport> check_group_bounds(const GroupSpec& spec);

struct EscapeThresholds {
  BigInt langweil;  // q > r + Delta*D
  BigInt lwchev;    // q >= 5 (r+1)^2 D
  BigInt lw4;       // q > r + 4D
  bool uses_delta_bound = true;
};
EscapeThresholds escape_thresholds(const GroupSpec& spec, const BigInt& D);

// Evaluates the thresholds for V's declared degree and, when the group is
// enumerable, verifies that some rational point avoids V whenever a
// threshold says one must exist.
std::vector<CensusReport> threshold_escape_check(const GroupSpec& spec, const VarietySpec& v,
                                                 const EnumOptions& opts = {});

struct TorusCensusReport {
  BigInt group_order = 0;
  BigInt torus_points = 0;
  BigInt normalizer_points = 0;
  BigInt conjugate_count = 0;       // |G| / |N(T)(F_q)|
  std::uint64_t point_set_count = 0;  // distinct conjugate point sets
  bool point_sets_differ = false;      // logged discrepancy, never asserted
  BigInt weyl_factor = 0;           // |N(T)(F_q)| / |T(F_q)|
  bool conjugate_bound_ok = false;  // count * (6r)^r >= q^(delta-r)
  bool weyl_bound_ok = false;       // weyl <= r! 2^r
  std::string to_json() const;
};
TorusCensusReport torus_conjugate_census(const GroupSpec& spec, const EnumOptions& opts = {});

struct LieCensusReport {
  unsigned nullity = 0;
  unsigned dim = 0;
  BigInt count = 0;      // q^nullity
  BigInt expected = 0;   // q^delta
  bool ok = false;
  std::uint64_t enumerated = 0;  // span-enumerated and re-verified, when feasible
  std::string to_json() const;
};
LieCensusReport lie_census(const GroupSpec& spec, std::uint64_t enumerate_cap = 20'000'000);

struct CayleyCensusReport {
  std::uint64_t lie_total = 0;
  std::uint64_t lie_off_singular = 0;
  std::uint64_t group_total = 0;
  std::uint64_t group_off_singular = 0;
  bool involution_ok = false;
  bool bijection_ok = false;
  std::string to_json() const;
};
CayleyCensusReport cayley_census(const GroupSpec& spec, const EnumOptions& opts = {});

// Count of elements of `elems` normalizing the diagonal torus (as an
// algebraic torus), plus a membership mask.
std::pair<BigInt, std::vector<bool>> torus_normalizer(const GroupSpec& spec,
                                                      const std::vector<Mat>& elems);

}  // namespace growthlab
