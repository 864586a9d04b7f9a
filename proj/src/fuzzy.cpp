#include "fuzzrel/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fuzzrel/errors.hpp"

namespace fuzzrel {
namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError(fmt::format("alpha must lie in [0, 1] (got {})", alpha));
  }
}

double lerp_x(const Breakpoint& a, const Breakpoint& b, double level) {
  return a.x + (level - a.membership) / (b.membership - a.membership) * (b.x - a.x);
}

}  // namespace

FuzzyNumber::FuzzyNumber(std::vector<Breakpoint> breakpoints) : bp_(std::move(breakpoints)) {
  if (bp_.empty()) throw ValidationError("fuzzy number needs at least one breakpoint");
  for (const Breakpoint& b : bp_) {
    if (!std::isfinite(b.x) || !(b.membership >= 0.0 && b.membership <= 1.0)) {
      throw ValidationError(
          fmt::format("breakpoint ({}, {}) outside the admissible range", b.x, b.membership));
    }
  }
  for (std::size_t i = 1; i < bp_.size(); ++i) {
    if (!(bp_[i].x > bp_[i - 1].x)) {
      throw ValidationError("fuzzy number breakpoints must have strictly increasing values");
    }
  }
  const auto peak = std::max_element(bp_.begin(), bp_.end(), [](auto& a, auto& b) {
    return a.membership < b.membership;
  });
  if (peak->membership != 1.0) throw ValidationError("fuzzy number must be normal (peak membership 1)");
  // Rise to the first peak, then never rise again.
  for (auto it = bp_.begin(); it != peak; ++it) {
    if (std::next(it)->membership < it->membership) {
      throw ValidationError("membership must be nondecreasing up to its peak");
    }
  }
  for (auto it = peak; std::next(it) != bp_.end(); ++it) {
    if (std::next(it)->membership > it->membership) {
      throw ValidationError("membership must be quasi-concave");
    }
  }
}

FuzzyNumber FuzzyNumber::trapezoidal(double a, double b, double c, double d) {
  if (!(a <= b && b <= c && c <= d)) {
    throw ValidationError(fmt::format("trapezoid requires a <= b <= c <= d (got {}, {}, {}, {})", a, b, c, d));
  }
  std::vector<Breakpoint> bp;
  if (a < b) bp.push_back({a, 0.0});
  bp.push_back({b, 1.0});
  if (c > b) bp.push_back({c, 1.0});
  if (d > c) bp.push_back({d, 0.0});
  return FuzzyNumber(std::move(bp));
}

FuzzyNumber FuzzyNumber::triangular(double a, double b, double c) {
  return trapezoidal(a, b, b, c);
}

FuzzyNumber FuzzyNumber::crisp(double value) {
  if (!std::isfinite(value)) throw ValidationError("crisp value must be finite");
  return FuzzyNumber({{value, 1.0}});
}

Interval FuzzyNumber::alpha_cut(double alpha) const {
  require_alpha(alpha);
  if (alpha == 0.0) return {bp_.front().x, bp_.back().x};

  double lo = bp_.front().x;
  if (bp_.front().membership < alpha) {
    for (std::size_t i = 1; i < bp_.size(); ++i) {
      if (bp_[i].membership >= alpha) {
        lo = lerp_x(bp_[i - 1], bp_[i], alpha);
        break;
      }
    }
  }
  double hi = bp_.back().x;
  if (bp_.back().membership < alpha) {
    for (std::size_t i = bp_.size() - 1; i-- > 0;) {
      if (bp_[i].membership >= alpha) {
        hi = lerp_x(bp_[i], bp_[i + 1], alpha);
        break;
      }
    }
  }
  return {lo, hi};
}

double FuzzyNumber::membership(double x) const {
  if (x < bp_.front().x || x > bp_.back().x) return 0.0;
  if (bp_.size() == 1) return 1.0;
  auto it = std::upper_bound(bp_.begin(), bp_.end(), x,
                             [](double v, const Breakpoint& b) { return v < b.x; });
  if (it == bp_.end()) return bp_.back().membership;
  const Breakpoint& right = *it;
  const Breakpoint& left = *std::prev(it);
  const double f = (x - left.x) / (right.x - left.x);
  return left.membership + f * (right.membership - left.membership);
}

void check_nested(std::span<const CurveRow> rows, double tol) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!rows[i - 1].cut.contains(rows[i].cut, tol)) {
      throw NestingViolation(fmt::format(
          "cut at alpha={} [{}, {}] escapes cut at alpha={} [{}, {}]", rows[i].alpha,
          rows[i].cut.lo, rows[i].cut.hi, rows[i - 1].alpha, rows[i - 1].cut.lo, rows[i - 1].cut.hi));
    }
  }
}

MembershipCurve::MembershipCurve(std::vector<CurveRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("membership curve needs at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    require_alpha(rows_[i].alpha);
    if (!(rows_[i].cut.lo <= rows_[i].cut.hi)) {
      throw ValidationError(fmt::format("curve row alpha={} has lo > hi", rows_[i].alpha));
    }
    if (i > 0 && !(rows_[i].alpha > rows_[i - 1].alpha)) {
      throw ValidationError("curve alphas must be strictly increasing");
    }
  }
  check_nested(rows_);
}

Interval MembershipCurve::interval_at(double alpha) const {
  if (alpha < rows_.front().alpha || alpha > rows_.back().alpha) {
    throw ValidationError(fmt::format("alpha {} outside the curve range [{}, {}]", alpha,
                                      rows_.front().alpha, rows_.back().alpha));
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), alpha,
                             [](const CurveRow& r, double a) { return r.alpha < a; });
  if (it->alpha == alpha) return it->cut;
  const CurveRow& hi = *it;
  const CurveRow& lo = *std::prev(it);
  const double f = (alpha - lo.alpha) / (hi.alpha - lo.alpha);
  return {lo.cut.lo + f * (hi.cut.lo - lo.cut.lo), lo.cut.hi + f * (hi.cut.hi - lo.cut.hi)};
}

double MembershipCurve::membership_at(double z) const {
  if (rows_.empty() || !rows_.front().cut.contains(z)) return 0.0;

  // The left edge lo(alpha) is nondecreasing and the right edge hi(alpha)
  // nonincreasing, so the membership is the smaller of the two crossing levels.
  double left = rows_.back().alpha;
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].cut.lo > z) {
      const CurveRow& a = rows_[i - 1];
      const CurveRow& b = rows_[i];
      left = a.alpha + (z - a.cut.lo) / (b.cut.lo - a.cut.lo) * (b.alpha - a.alpha);
      break;
    }
  }
  double right = rows_.back().alpha;
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].cut.hi < z) {
      const CurveRow& a = rows_[i - 1];
      const CurveRow& b = rows_[i];
      right = a.alpha + (a.cut.hi - z) / (a.cut.hi - b.cut.hi) * (b.alpha - a.alpha);
      break;
    }
  }
  return std::clamp(std::min(left, right), 0.0, 1.0);
}

}  // namespace fuzzrel
