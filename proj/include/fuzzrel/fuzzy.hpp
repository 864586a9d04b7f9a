#pragma once

#include <span>
#include <vector>

namespace fuzzrel {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other, double tol = 0.0) const {
    return lo <= other.lo + tol && other.hi <= hi + tol;
  }
  bool operator==(const Interval&) const = default;
};

struct Breakpoint {
  double x = 0.0;
  double membership = 0.0;
};

/// Normal, quasi-concave, piecewise-linear fuzzy number.
///
/// Breakpoint abscissae are strictly increasing. Membership is zero outside
/// [front.x, back.x]; an end breakpoint with nonzero membership is a vertical
/// edge (e.g. trapezoidal(a, a, c, d) starts at (a, 1)).
class FuzzyNumber {
 public:
  /// Validates shape; throws ValidationError.
  explicit FuzzyNumber(std::vector<Breakpoint> breakpoints);

  static FuzzyNumber trapezoidal(double a, double b, double c, double d);
  static FuzzyNumber triangular(double a, double b, double c);
  /// Every alpha-cut is [value, value].
  static FuzzyNumber crisp(double value);

  /// {x : eta(x) >= alpha}; alpha = 0 gives the closure of the support.
  Interval alpha_cut(double alpha) const;
  double membership(double x) const;

  Interval support() const { return alpha_cut(0.0); }
  Interval core() const { return alpha_cut(1.0); }
  /// Midpoint of the core; the conventional crisp reduction.
  double modal_value() const { return core().mid(); }
  bool is_crisp() const { return bp_.size() == 1; }

  std::span<const Breakpoint> breakpoints() const { return bp_; }

 private:
  std::vector<Breakpoint> bp_;
};

inline FuzzyNumber crisp(double value) { return FuzzyNumber::crisp(value); }
inline Interval alpha_cut(const FuzzyNumber& fz, double alpha) { return fz.alpha_cut(alpha); }

struct CurveRow {
  double alpha = 0.0;
  Interval cut;
};

/// Fuzzy output stored by its alpha-cuts, e.g. the fuzzy MTBF.
class MembershipCurve {
 public:
  static constexpr double kNestingTolerance = 1e-9;

  MembershipCurve() = default;
  /// Alphas strictly increasing in [0, 1]; cuts nested within
  /// kNestingTolerance. Throws NestingViolation or ValidationError.
  explicit MembershipCurve(std::vector<CurveRow> rows);

  std::span<const CurveRow> rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Cut at an arbitrary alpha in [rows.front.alpha, rows.back.alpha],
  /// interpolated linearly between stored rows.
  Interval interval_at(double alpha) const;

  /// sup{alpha : z in cut(alpha)} with linear interpolation between rows.
  double membership_at(double z) const;

 private:
  std::vector<CurveRow> rows_;
};

inline double membership_at(const MembershipCurve& curve, double z) {
  return curve.membership_at(z);
}

/// Throws NestingViolation naming the first adjacent pair whose upper-alpha
/// cut escapes the lower-alpha cut by more than `tol`.
void check_nested(std::span<const CurveRow> rows, double tol = MembershipCurve::kNestingTolerance);

}  // namespace fuzzrel
