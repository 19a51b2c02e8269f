#include "growthlab/ledger.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <map>
#include <sstream>

namespace growthlab {

namespace {

// Trial-division factorization. Bases in this artifact are small (ball
// sizes, field powers, grid values); anything with a huge prime cofactor
// is kept opaque, which only weakens equality detection, never soundness.
std::vector<std::pair<BigInt, BigInt>> factor_base(const BigInt& base) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt rest = base;
  for (BigInt d = 2; d * d <= rest && d <= 2'000'000; ++d) {
    if (rest % d != 0) continue;
    BigInt e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (rest > 1) out.emplace_back(rest, 1);
  return out;
}

using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
using FloatBig = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<1200>>;

template <class F>
std::optional<std::strong_ordering> interval_compare(
    const std::vector<std::pair<BigInt, BigInt>>& diff) {
  // sign of sum exp * ln(base) with a conservative error bound
  F total = 0, err = 0;
  const F eps = std::numeric_limits<F>::epsilon();
  for (const auto& [base, exp] : diff) {
    F b(base.str());
    F e(exp.str());
    F term = e * log(b);
    total += term;
    err += (abs(term) + 1) * eps * 16;
  }
  if (total > err) return std::strong_ordering::greater;
  if (total < -err) return std::strong_ordering::less;
  return std::nullopt;
}

}  // namespace

void LedgerTerm::normalize() {
  std::map<BigInt, BigInt> acc;
  for (const auto& [base, exp] : factors_) {
    if (exp == 0) continue;
    if (base <= 0) fail(Err::OutOfRange, "ledger terms are positive");
    if (base == 1) continue;
    for (const auto& [p, e] : factor_base(base)) acc[p] += e * exp;
  }
  factors_.clear();
  for (const auto& [p, e] : acc)
    if (e != 0) factors_.emplace_back(p, e);
}

LedgerTerm LedgerTerm::from_int(const BigInt& v) {
  if (v < 1) fail(Err::OutOfRange, "ledger terms are positive integers");
  LedgerTerm t;
  t.factors_.emplace_back(v, 1);
  t.normalize();
  return t;
}

LedgerTerm LedgerTerm::power(const BigInt& base, const BigInt& exp) {
  if (base < 1) fail(Err::OutOfRange, "ledger base must be >= 1");
  LedgerTerm t;
  t.factors_.emplace_back(base, exp);
  t.normalize();
  return t;
}

LedgerTerm LedgerTerm::mul(const LedgerTerm& o) const {
  LedgerTerm t;
  t.factors_ = factors_;
  for (const auto& f : o.factors_) t.factors_.push_back(f);
  t.normalize();
  return t;
}

LedgerTerm LedgerTerm::div(const LedgerTerm& o) const {
  LedgerTerm t;
  t.factors_ = factors_;
  for (const auto& [b, e] : o.factors_) t.factors_.emplace_back(b, -e);
  t.normalize();
  return t;
}

LedgerTerm LedgerTerm::pow(const BigInt& e) const {
  LedgerTerm t;
  for (const auto& [b, x] : factors_) t.factors_.emplace_back(b, x * e);
  t.normalize();
  return t;
}

std::optional<BigInt> LedgerTerm::expand(std::uint64_t max_bits) const {
  BigInt num = 1;
  std::uint64_t bits = 0;
  for (const auto& [b, e] : factors_) {
    if (e < 0) return std::nullopt;  // not an integer
    std::uint64_t b_bits = msb(b) + 1;
    BigInt cost = e * b_bits;
    if (cost > max_bits || bits + static_cast<std::uint64_t>(cost) > max_bits)
      return std::nullopt;
    bits += static_cast<std::uint64_t>(cost);
    num *= big_pow(b, static_cast<std::uint64_t>(e));
  }
  return num;
}

std::strong_ordering LedgerTerm::compare(const LedgerTerm& a, const LedgerTerm& b) {
  // componentwise difference of exponent vectors
  std::map<BigInt, BigInt> diff;
  for (const auto& [p, e] : a.factors_) diff[p] += e;
  for (const auto& [p, e] : b.factors_) diff[p] -= e;
  std::vector<std::pair<BigInt, BigInt>> d;
  for (const auto& [p, e] : diff)
    if (e != 0) d.emplace_back(p, e);
  if (d.empty()) return std::strong_ordering::equal;

  // dominance: all exponents of the ratio on one side
  bool all_pos = true, all_neg = true;
  for (const auto& [p, e] : d) {
    if (e > 0) all_neg = false;
    if (e < 0) all_pos = false;
  }
  if (all_pos) return std::strong_ordering::greater;
  if (all_neg) return std::strong_ordering::less;

  // exact expansion of both sides of the ratio under a bit cap
  {
    BigInt pos = 1, neg = 1;
    BigInt pos_bits = 0, neg_bits = 0;
    bool ok = true;
    for (const auto& [p, e] : d) {
      BigInt cost = (e > 0 ? e : -e) * (msb(p) + 1);
      if (e > 0)
        pos_bits += cost;
      else
        neg_bits += cost;
      if (pos_bits > 4096 || neg_bits > 4096) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& [p, e] : d) {
        if (e > 0)
          pos *= big_pow(p, static_cast<std::uint64_t>(e));
        else
          neg *= big_pow(p, static_cast<std::uint64_t>(-e));
      }
      if (pos > neg) return std::strong_ordering::greater;
      if (pos < neg) return std::strong_ordering::less;
      return std::strong_ordering::equal;
    }
  }

  // rigorous interval comparison, escalating precision; distinct factor
  // vectors have distinct values, so separation is guaranteed eventually
  if (auto r = interval_compare<Float>(d)) return *r;
  if (auto r = interval_compare<FloatBig>(d)) return *r;
  fail(Err::OutOfRange, "ledger comparison did not separate at max precision");
}

std::string LedgerTerm::str() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, e] : factors_) {
    if (!first) os << " * ";
    first = false;
    os << b.str();
    if (e != 1) os << "^" << e.str();
  }
  return os.str();
}

LedgerTerm c1(unsigned d, const BigInt& D, unsigned delta) {
  if (D < 1) fail(Err::OutOfRange, "c1: D must be >= 1");
  return c1(d, LedgerTerm::from_int(D), delta);
}

LedgerTerm c1(unsigned d, const LedgerTerm& D, unsigned delta) {
  if (d > delta) fail(Err::OutOfRange, "c1: d exceeds delta");
  if (d == 0) return D;
  BigInt exp_tower = big_pow(delta, d);            // delta^d
  BigInt falling = 1;                              // delta (delta-1) ... (delta-d+1)
  for (unsigned i = 0; i < d; ++i) falling *= delta - i;
  return LedgerTerm::power(2 * BigInt(delta), exp_tower).mul(D.pow(falling));
}

BigInt c2(const BigInt& m, unsigned delta, unsigned iota, unsigned n) {
  if (m < 1) fail(Err::OutOfRange, "c2: m must be >= 1");
  BigInt k = 2 * big_pow(BigInt(1) + iota, static_cast<std::uint64_t>(n) * n);
  return BigInt(delta) * (m + k);
}

LedgerTerm image_degree_bound(const LedgerTerm& D, const BigInt& mdeg, const BigInt& dim_image) {
  if (mdeg < 1 || dim_image < 0) fail(Err::OutOfRange, "image_degree_bound inputs");
  return D.mul(LedgerTerm::power(mdeg, dim_image));
}

LedgerTerm preimage_degree_bound(const LedgerTerm& DV, const LedgerTerm& DW, const BigInt& mdeg,
                                 const BigInt& dim_image) {
  if (mdeg < 1 || dim_image < 0) fail(Err::OutOfRange, "preimage_degree_bound inputs");
  return DV.mul(DW).mul(LedgerTerm::power(mdeg, dim_image));
}

LedgerTerm hypersurface_preimage_bound(const LedgerTerm& DV, const LedgerTerm& DW,
                                       const BigInt& mdeg) {
  if (mdeg < 1) fail(Err::OutOfRange, "hypersurface_preimage_bound inputs");
  return DV.mul(DW).mul(LedgerTerm::from_int(mdeg));
}

namespace {

// Map delta back to the family parameters used for the C_2 side checks.
void family_params_for_delta(unsigned delta, unsigned& iota, unsigned& n) {
  for (unsigned r = 1; r * r + 2 * r <= delta; ++r) {
    if (r * r + 2 * r == delta) {  // SL_{r+1} usual
      iota = r;
      n = r + 1;
      return;
    }
  }
  for (unsigned r = 1; 2 * r * r + r <= delta; ++r) {
    if (2 * r * r + r == delta) {  // Sp_{2r} / SO_{2r+1}
      iota = 1;
      n = 2 * r;
      return;
    }
  }
  for (unsigned r = 1; 2 * r * r - r <= delta; ++r) {
    if (2 * r * r - r == delta) {  // SO+_{2r}
      iota = 1;
      n = 2 * r;
      return;
    }
  }
  iota = 1;
  n = 2;
}

}  // namespace

RecurrenceReport verify_recurrences(unsigned delta, const std::vector<BigInt>& D_grid,
                                    unsigned delta_cap) {
  if (delta < 1 || delta > delta_cap) fail(Err::OutOfRange, "delta outside configured cap");
  RecurrenceReport rep;
  rep.delta = delta;
  bool all = true;

  for (unsigned d = 1; d <= delta; ++d) {
    const unsigned ell_max = delta - d + 1;
    for (unsigned ell = 2; ell <= ell_max; ++ell) {
      // dominance supplement: both sides are monomials A * D^a in D, so
      // exponent dominance plus the D = 1 comparison covers all D >= 1
      {
        DominanceCase dc;
        dc.d = d;
        dc.ell = ell;
        BigInt falling_d = 1, falling_dm1 = 1;
        for (unsigned i = 0; i < d; ++i) falling_d *= delta - i;
        for (unsigned i = 0; i + 1 < d; ++i) falling_dm1 *= delta - i;
        if (d == 1) falling_dm1 = 1;  // C1(0, D) = D has D-exponent 1
        // fibre: LHS exponent ell * falling_d, RHS sum_{i=1}^{ell-1} falling_dm1 * (i+1)
        BigInt lhs_exp = BigInt(ell) * falling_d;
        BigInt rhs_exp = 0;
        for (unsigned i = 1; i < ell; ++i) rhs_exp += falling_dm1 * (i + 1);
        // exceptional: LHS exponent (delta+1-d) * falling_d, RHS (delta-d) * falling_dm1 * (ell+1)
        BigInt lhs_exp2 = BigInt(delta + 1 - d) * falling_d;
        BigInt rhs_exp2 = BigInt(delta - d) * falling_dm1 * (ell + 1);
        dc.exponent_ok = lhs_exp >= rhs_exp && lhs_exp2 >= rhs_exp2;
        // constants at D = 1
        LedgerTerm one = LedgerTerm::from_int(1);
        LedgerTerm lhs_f = c1(d, one, delta).pow(ell);
        LedgerTerm rhs_f = LedgerTerm::from_int(2);
        LedgerTerm degf =
            LedgerTerm::power(2, delta).mul(LedgerTerm::power(ell, delta - 1));
        for (unsigned i = 1; i < ell; ++i) rhs_f = rhs_f.mul(c1(d - 1, degf, delta));
        LedgerTerm lhs_e = c1(d, one, delta).pow(delta + 1 - d);
        LedgerTerm dege = LedgerTerm::power(2 * BigInt(ell), delta);
        LedgerTerm rhs_e =
            LedgerTerm::from_int(2 * BigInt(ell)).mul(c1(d - 1, dege, delta)).pow(delta - d);
        dc.constant_ok = lhs_f.geq(rhs_f) && lhs_e.geq(rhs_e);
        rep.dominance.push_back(dc);
        all = all && dc.exponent_ok && dc.constant_ok;
      }

      for (const BigInt& D : D_grid) {
        RecurrenceCase rc;
        rc.d = d;
        rc.ell = ell;
        rc.D = D;
        LedgerTerm Dt = LedgerTerm::from_int(D);

        // exit through fibres, cleared by the ell-th power:
        //   C1(d,D)^ell >= 2 * prod_{i=1}^{ell-1} C1(d-1, 2^delta ell^{delta-1} D^{i+1})
        LedgerTerm lhs = c1(d, Dt, delta).pow(ell);
        LedgerTerm rhs = LedgerTerm::from_int(2);
        for (unsigned i = 1; i < ell; ++i) {
          LedgerTerm deg = LedgerTerm::power(2, delta)
                               .mul(LedgerTerm::power(ell, delta - 1))
                               .mul(Dt.pow(i + 1));
          rhs = rhs.mul(c1(d - 1, deg, delta));
        }
        rc.fibre_ok = lhs.geq(rhs);

        // exit through the exceptional locus, cleared by (delta+1-d):
        //   C1(d,D)^(delta+1-d) >= (2 ell C1(d-1, (2 ell)^delta D^(ell+1)))^(delta-d)
        LedgerTerm lhs2 = c1(d, Dt, delta).pow(delta + 1 - d);
        LedgerTerm deg2 = LedgerTerm::power(2 * BigInt(ell), delta).mul(Dt.pow(ell + 1));
        LedgerTerm rhs2 =
            LedgerTerm::from_int(2 * BigInt(ell)).mul(c1(d - 1, deg2, delta)).pow(delta - d);
        rc.exceptional_ok = lhs2.geq(rhs2);

        rep.cases.push_back(rc);
        all = all && rc.fibre_ok && rc.exceptional_ok;
      }
    }
  }
  // d = delta: the exceptional-exit exponent (delta-d)/(delta+1-d) is 0, so
  // the right side is 1 and the inequality is trivial; record it once
  {
    RecurrenceCase rc;
    rc.d = delta;
    rc.ell = 1;
    rc.D = 1;
    rc.fibre_ok = true;
    rc.exceptional_ok = c1(delta, BigInt(1), delta).geq(LedgerTerm::from_int(1));
    rep.cases.push_back(rc);
    all = all && rc.exceptional_ok;
  }

  // monotonicity of C1 in both arguments over the grid
  rep.monotone_ok = true;
  for (unsigned d = 0; d + 1 <= delta; ++d)
    for (const BigInt& D : D_grid)
      if (!c1(d + 1, D, delta).geq(c1(d, D, delta))) rep.monotone_ok = false;
  for (unsigned d = 0; d <= delta; ++d)
    for (std::size_t i = 0; i + 1 < D_grid.size(); ++i)
      if (!c1(d, D_grid[i + 1], delta).geq(c1(d, D_grid[i], delta))) rep.monotone_ok = false;
  all = all && rep.monotone_ok;

  // C2 side: delta (m + k) >= ell m + (ell-1) k for every ell <= delta, plus C2 >= m
  rep.c2_ok = true;
  unsigned iota = 1, n = 2;
  family_params_for_delta(delta, iota, n);
  for (BigInt m : {BigInt(1), BigInt(2), BigInt(10)}) {
    BigInt c2v = c2(m, delta, iota, n);
    BigInt k = 2 * big_pow(BigInt(1) + iota, static_cast<std::uint64_t>(n) * n);
    for (unsigned ell = 2; ell <= delta; ++ell)
      if (c2v < BigInt(ell) * m + BigInt(ell - 1) * k) rep.c2_ok = false;
    if (c2v < m) rep.c2_ok = false;
  }
  all = all && rep.c2_ok;

  rep.all_ok = all;
  if (!all) fail(Err::RecurrenceViolated, "a ledger recurrence failed for delta = " +
                                              std::to_string(delta));
  return rep;
}

MainInequalityReport main_inequality_check(const std::string& variety_label, const BigInt& lhs,
                                           const BigInt& ball_at_c2, const BigInt& c2_radius,
                                           unsigned d, const BigInt& D, unsigned delta,
                                           const BigInt& group_order) {
  MainInequalityReport rep;
  rep.variety = variety_label;
  rep.lhs = lhs;
  rep.ball_at_c2 = ball_at_c2;
  rep.c2_radius = c2_radius;
  rep.c1_term = c1(d, D, delta);
  rep.vacuous = ball_at_c2 == group_order;
  // lhs <= C1 * ball^(d/delta)  <=>  lhs^delta <= C1^delta * ball^d
  LedgerTerm lhs_t = LedgerTerm::from_int(lhs == 0 ? BigInt(1) : lhs).pow(delta);
  LedgerTerm rhs_t = rep.c1_term.pow(delta).mul(LedgerTerm::power(ball_at_c2, d));
  rep.holds = lhs == 0 || lhs_t.leq(rhs_t);
  rep.slack = rhs_t.div(lhs_t).str();
  return rep;
}

}  // namespace growthlab
