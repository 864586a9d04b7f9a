#include "fuzzrel/decision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "fuzzrel/errors.hpp"

namespace fuzzrel {

void AlphaCutTable::validate() const {
  if (rows.empty()) throw ValidationError("alpha-cut table has no rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].alpha > rows[i - 1].alpha)) {
      throw ValidationError("alpha-cut table rows must have strictly increasing alpha");
    }
  }
  auto column = [this](auto pick) {
    std::vector<CurveRow> col;
    col.reserve(rows.size());
    for (const AlphaCutRow& r : rows) col.push_back({r.alpha, pick(r)});
    check_nested(col);
  };
  for (Parameter p : kAllParameters) {
    if (p == Parameter::Beta && !has_beta) continue;
    column([p](const AlphaCutRow& r) { return r.cuts[static_cast<std::size_t>(p)]; });
  }
  column([](const AlphaCutRow& r) { return r.characteristic; });
}

MembershipCurve AlphaCutTable::curve() const {
  std::vector<CurveRow> out;
  out.reserve(rows.size());
  for (const AlphaCutRow& r : rows) out.push_back({r.alpha, r.characteristic});
  return MembershipCurve(std::move(out));
}

AlphaCutTable build_table(const FuzzySystemParams& fp, const Metric& metric,
                          std::span<const double> alphas, const SolverOptions& opts,
                          const Execution& exec) {
  const std::vector<BoundsResult> results = bounds_per_alpha(fp, metric, alphas, opts, exec);
  AlphaCutTable table;
  table.metric = metric;
  table.has_beta = metric.uses_beta();
  for (const BoundsResult& r : results) table.rows.push_back({r.alpha, r.box, r.bounds});
  table.validate();
  return table;
}

double invert_query(const MembershipCurve& curve, const DecisionQuery& q) {
  if (!(q.target.lo <= q.target.hi)) {
    throw ValidationError(fmt::format("target lower bound {} exceeds upper bound {}", q.target.lo,
                                      q.target.hi));
  }
  const auto rows = curve.rows();
  if (rows.empty()) throw ValidationError("empty membership curve");
  auto inside = [&](const Interval& cut) { return q.target.contains(cut); };

  const CurveRow& top = rows.back();
  if (!inside(top.cut)) {
    throw NoContainmentError(fmt::format(
        "no alpha level fits inside [{}, {}]; the tightest cut (alpha={}) is [{}, {}]", q.target.lo,
        q.target.hi, top.alpha, top.cut.lo, top.cut.hi));
  }
  if (inside(rows.front().cut)) return rows.front().alpha;

  // Cuts shrink with alpha, so containment holds on [alpha*, top]. Find the
  // first stored row inside the target and solve each violated edge on the
  // segment below it.
  std::size_t k = 1;
  while (!inside(rows[k].cut)) ++k;
  const CurveRow& a = rows[k - 1];
  const CurveRow& b = rows[k];
  double alpha = a.alpha;
  if (a.cut.lo < q.target.lo) {
    alpha = std::max(alpha, a.alpha + (q.target.lo - a.cut.lo) / (b.cut.lo - a.cut.lo) *
                                          (b.alpha - a.alpha));
  }
  if (a.cut.hi > q.target.hi) {
    alpha = std::max(alpha, a.alpha + (a.cut.hi - q.target.hi) / (a.cut.hi - b.cut.hi) *
                                          (b.alpha - a.alpha));
  }
  return std::min(alpha, b.alpha);
}

Interval required_parameter_range(const AlphaCutTable& table, double alpha, Parameter parameter) {
  if (parameter == Parameter::Beta && !table.has_beta) {
    throw ValidationError("unknown parameter 'beta' for a table without a reboot-rate column");
  }
  const auto col = static_cast<std::size_t>(parameter);
  const auto& rows = table.rows;
  if (rows.empty() || alpha < rows.front().alpha || alpha > rows.back().alpha) {
    throw ValidationError(fmt::format("alpha {} outside the table range", alpha));
  }
  auto it = std::lower_bound(rows.begin(), rows.end(), alpha,
                             [](const AlphaCutRow& r, double a) { return r.alpha < a; });
  if (it->alpha == alpha) return it->cuts[col];
  const Interval& hi = it->cuts[col];
  const Interval& lo = std::prev(it)->cuts[col];
  const double f = (alpha - std::prev(it)->alpha) / (it->alpha - std::prev(it)->alpha);
  return {lo.lo + f * (hi.lo - lo.lo), lo.hi + f * (hi.hi - lo.hi)};
}

Interval required_parameter_range(const AlphaCutTable& table, double alpha, std::string_view name) {
  return required_parameter_range(table, alpha, parse_parameter(name));
}

CalibrationResult calibrate_coverage(const FuzzySystemParams& fp, const Metric& metric,
                                     double anchor_alpha, const Interval& anchor,
                                     const SolverOptions& opts) {
  auto bounds_at = [&](double c) {
    FuzzySystemParams trial = fp;
    trial.c = c;
    return characteristic_bounds(trial, metric, anchor_alpha, opts).bounds;
  };
  auto residual = [&](double c) { return bounds_at(c).lo - anchor.lo; };

  auto finish = [&](double c) {
    const Interval b = bounds_at(c);
    return CalibrationResult{c, b.lo - anchor.lo, b.hi - anchor.hi, b};
  };

  const double r0 = residual(0.0);
  const double r1 = residual(1.0);
  if (r0 == 0.0) return finish(0.0);
  if (r1 == 0.0) return finish(1.0);
  if ((r0 < 0.0) == (r1 < 0.0)) {
    throw SolverError(fmt::format(
        "no coverage in [0, 1] reaches lower bound {} at alpha={} (residual {} at c=0, {} at c=1)",
        anchor.lo, anchor_alpha, r0, r1));
  }

  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      residual, 0.0, 1.0, r0, r1, boost::math::tools::eps_tolerance<double>(52), iterations);
  // Report whichever bracket end lands closer to the anchor.
  const double c = std::abs(residual(a)) <= std::abs(residual(b)) ? a : b;
  return finish(c);
}

}  // namespace fuzzrel
