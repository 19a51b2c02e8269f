#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/error.hpp"

namespace growthlab {

// A positive rational kept as a product of integer powers, prime-factored
// on construction so that equality is a vector comparison. Comparison is
// exact: componentwise dominance first, then exact expansion under a bit
// cap, then rigorous interval arithmetic on sums of logarithms with the
// precision escalated until the intervals separate (they must, since
// distinct factor vectors mean distinct values by unique factorization).
class LedgerTerm {
 public:
  LedgerTerm() = default;  // represents 1
  static LedgerTerm from_int(const BigInt& v);              // v >= 1
  static LedgerTerm power(const BigInt& base, const BigInt& exp);

  LedgerTerm mul(const LedgerTerm& o) const;
  LedgerTerm div(const LedgerTerm& o) const;
  LedgerTerm pow(const BigInt& e) const;

  static std::strong_ordering compare(const LedgerTerm& a, const LedgerTerm& b);
  bool operator==(const LedgerTerm& o) const { return compare(*this, o) == 0; }
  bool leq(const LedgerTerm& o) const { return compare(*this, o) <= 0; }
  bool geq(const LedgerTerm& o) const { return compare(*this, o) >= 0; }

  bool is_one() const { return factors_.empty(); }
  // Exact integer value when it fits below the bit cap (and is integral).
  std::optional<BigInt> expand(std::uint64_t max_bits = 1 << 16) const;
  std::string str() const;  // "2^5 * 3^12" style

  const std::vector<std::pair<BigInt, BigInt>>& factors() const { return factors_; }

 private:
  void normalize();
  // base -> exponent, bases pairwise coprime-ish (prime for small bases),
  // sorted ascending, exponents nonzero (negative allowed for ratios)
  std::vector<std::pair<BigInt, BigInt>> factors_;
};

// C_1(d, D): D when d = 0, else (2*delta)^(delta^d) * D^(delta (delta-1) ... (delta-d+1)).
LedgerTerm c1(unsigned d, const BigInt& D, unsigned delta);
LedgerTerm c1(unsigned d, const LedgerTerm& D, unsigned delta);

// C_2(m) = delta * (m + 2 (1+iota)^(n^2)).
BigInt c2(const BigInt& m, unsigned delta, unsigned iota, unsigned n);

// Degree-bound calculus: image, preimage, and hypersurface-preimage rules.
LedgerTerm image_degree_bound(const LedgerTerm& D, const BigInt& mdeg, const BigInt& dim_image);
LedgerTerm preimage_degree_bound(const LedgerTerm& DV, const LedgerTerm& DW, const BigInt& mdeg,
                                 const BigInt& dim_image);
LedgerTerm hypersurface_preimage_bound(const LedgerTerm& DV, const LedgerTerm& DW,
                                       const BigInt& mdeg);

struct RecurrenceCase {
  unsigned d = 0, ell = 0;
  BigInt D;
  bool fibre_ok = false;       // the exit-through-fibres inequality
  bool exceptional_ok = false; // the exit-through-exceptional-locus inequality
};

struct DominanceCase {
  unsigned d = 0, ell = 0;
  bool exponent_ok = false;  // D-exponents dominate for all D >= 1
  bool constant_ok = false;  // constants dominate at D = 1
};

struct RecurrenceReport {
  unsigned delta = 0;
  std::vector<RecurrenceCase> cases;
  std::vector<DominanceCase> dominance;  // grid supplement: proves all D >= 1
  bool monotone_ok = false;
  bool c2_ok = false;
  bool all_ok = false;
};

// Exhaustive verification of the two exit inequalities for the chosen C_1,
// over 1 <= d <= delta, 2 <= ell <= delta-d+1, D in the grid. Rational
// exponents are cleared by raising both sides to integer powers. Throws
// RecurrenceViolated if any case fails.
RecurrenceReport verify_recurrences(unsigned delta,
                                    const std::vector<BigInt>& D_grid = {BigInt(1), BigInt(2),
                                                                         BigInt(10),
                                                                         BigInt(1000)},
                                    unsigned delta_cap = 10);

struct MainInequalityReport {
  std::string variety;
  BigInt lhs;                // |A^m ∩ V|
  BigInt ball_at_c2;         // |A^{C2(m)}|
  BigInt c2_radius;
  LedgerTerm c1_term;
  bool holds = false;
  bool vacuous = false;      // |A^{C2}| = |G|
  std::string slack;         // RHS/LHS as a ledger ratio
};

// Exact check of lhs <= C1 * ball^(d/delta), cleared to integer exponents:
// lhs^delta <= C1^delta * ball^d.
MainInequalityReport main_inequality_check(const std::string& variety_label, const BigInt& lhs,
                                           const BigInt& ball_at_c2, const BigInt& c2_radius,
                                           unsigned d, const BigInt& D, unsigned delta,
                                           const BigInt& group_order);

}  // namespace growthlab
