#pragma once

// Management-facing views of a fuzzy characteristic: alpha-cut tables in the
// layout of the published reliability tables, "which alpha delivers my
// target band" queries, and calibration of the unstated coverage factor.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fuzzrel/fuzzy.hpp"
#include "fuzzrel/optimizer.hpp"

namespace fuzzrel {

struct AlphaCutRow {
  double alpha = 0.0;
  ParameterBox cuts{};  // indexed by Parameter
  Interval characteristic;
};

struct AlphaCutTable {
  Metric metric = Metric::mtbf();
  bool has_beta = false;  // availability tables carry the reboot-rate cut
  std::vector<AlphaCutRow> rows;

  /// Alphas strictly increasing; every interval column nested.
  void validate() const;
  MembershipCurve curve() const;
};

AlphaCutTable build_table(const FuzzySystemParams& fp, const Metric& metric,
                          std::span<const double> alphas, const SolverOptions& opts = {},
                          const Execution& exec = {});

struct DecisionQuery {
  Metric metric = Metric::mtbf();
  Interval target;
};

/// Smallest alpha whose cut lies inside the target band, interpolating
/// linearly between stored rows. Throws NoContainmentError when even the top
/// row escapes the target.
double invert_query(const MembershipCurve& curve, const DecisionQuery& q);

/// The parameter's cut at `alpha`: the stored cut at a stored level,
/// otherwise interpolated between the neighbouring rows.
Interval required_parameter_range(const AlphaCutTable& table, double alpha, Parameter parameter);
Interval required_parameter_range(const AlphaCutTable& table, double alpha, std::string_view name);

struct CalibrationResult {
  double c = 0.0;
  double lower_residual = 0.0;  // computed lo - anchor lo
  double upper_residual = 0.0;  // computed hi - anchor hi, diagnostic only
  Interval bounds;              // characteristic bounds at c
};

/// Root-finds the crisp coverage c in [0, 1] so the characteristic's lower
/// bound at `anchor_alpha` equals `anchor.lo`. Throws SolverError when the
/// residual does not change sign on [0, 1].
CalibrationResult calibrate_coverage(const FuzzySystemParams& fp, const Metric& metric,
                                     double anchor_alpha, const Interval& anchor,
                                     const SolverOptions& opts = {});

}  // namespace fuzzrel
