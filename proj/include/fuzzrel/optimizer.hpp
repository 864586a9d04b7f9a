#pragma once

// Paired min/max programs over alpha-cut boxes.
//
// For a fixed alpha every fuzzy rate contributes its alpha-cut, the cuts span
// a box, and the lower/upper ends of the characteristic's alpha-cut are the
// minimum/maximum of the crisp kernel over that box. Stacking these intervals
// over alpha reconstructs the extension-principle membership function.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzrel/fuzzy.hpp"
#include "fuzzrel/markov.hpp"
#include "fuzzrel/parallel.hpp"

namespace fuzzrel {

enum class Parameter : std::size_t { Lambda = 0, Theta, Mu, Beta };

inline constexpr std::size_t kNumParameters = 4;

inline constexpr std::array<Parameter, kNumParameters> kAllParameters{
    Parameter::Lambda, Parameter::Theta, Parameter::Mu, Parameter::Beta};

std::string_view to_string(Parameter p);
/// Accepts "lambda", "theta", "mu", "beta"; throws ValidationError otherwise.
Parameter parse_parameter(std::string_view name);

/// How the standby bound theta <= lambda interacts with the box.
enum class ThetaCoupling { Independent, Joint };

struct FuzzySystemParams {
  FuzzyNumber lambda = FuzzyNumber::crisp(1.0);
  FuzzyNumber theta = FuzzyNumber::crisp(0.0);
  FuzzyNumber mu = FuzzyNumber::crisp(1.0);
  FuzzyNumber beta = FuzzyNumber::crisp(1.0);
  double c = 1.0;
  ThetaCoupling coupling = ThetaCoupling::Independent;

  const FuzzyNumber& get(Parameter p) const;
  /// Supports: lambda, mu, beta > 0; theta >= 0; c in [0, 1].
  void validate() const;
  /// Crisp reduction at the modal values.
  SystemParams modal() const;
};

class Metric {
 public:
  enum class Kind { Mtbf, SteadyAvailability, ReliabilityAtT };

  static Metric mtbf() { return Metric(Kind::Mtbf, 0.0); }
  static Metric availability() { return Metric(Kind::SteadyAvailability, 0.0); }
  static Metric reliability_at(double t);

  Kind kind() const { return kind_; }
  double time() const { return t_; }
  std::string name() const;

  /// Parameters the kernel depends on; the rest are pinned at modal values.
  std::span<const Parameter> active_parameters() const;
  bool uses_beta() const { return kind_ == Kind::SteadyAvailability; }

  double evaluate(const SystemParams& p, Validation check = Validation::Strict) const;

  bool operator==(const Metric&) const = default;

 private:
  Metric(Kind kind, double t) : kind_(kind), t_(t) {}
  Kind kind_;
  double t_;
};

using ParameterPoint = std::array<double, kNumParameters>;
using ParameterBox = std::array<Interval, kNumParameters>;

SystemParams to_system_params(const ParameterPoint& x, double c);

ParameterBox alpha_box(const FuzzySystemParams& fp, double alpha);

enum class BoundsMethod { CornerScan, MultiStartLocal, GridRefine };

std::string_view to_string(BoundsMethod m);

struct BoundsResult {
  double alpha = 0.0;
  ParameterBox box{};
  Interval bounds;
  ParameterPoint argmin{};
  ParameterPoint argmax{};
  BoundsMethod method = BoundsMethod::CornerScan;
};

struct SolverOptions {
  int interior_starts = 8;
  double tolerance = 1e-10;
  int max_evaluations = 4000;
  std::uint64_t seed = 0x5eedULL;
};

/// Corner scan, then projected Nelder-Mead from every corner and from
/// `interior_starts` seeded interior points, for both the min and the max.
BoundsResult characteristic_bounds(const FuzzySystemParams& fp, const Metric& metric, double alpha,
                                   const SolverOptions& opts = {});

/// Uniform grid with `grid_per_axis` nodes per active axis, corners included.
/// Ties resolve to the lowest grid index, so serial and parallel runs agree.
BoundsResult brute_force_bounds(const FuzzySystemParams& fp, const Metric& metric, double alpha,
                                int grid_per_axis, const Execution& exec = {});

/// One characteristic_bounds row per alpha. Levels must run from 0 to 1 and
/// are evaluated concurrently under a parallel policy. Throws NestingViolation.
MembershipCurve membership_curve(const FuzzySystemParams& fp, const Metric& metric,
                                 std::span<const double> alphas, const SolverOptions& opts = {},
                                 const Execution& exec = {});

/// Same as membership_curve but keeps the full per-alpha results.
std::vector<BoundsResult> bounds_per_alpha(const FuzzySystemParams& fp, const Metric& metric,
                                           std::span<const double> alphas,
                                           const SolverOptions& opts = {},
                                           const Execution& exec = {});

/// `levels` evenly spaced alphas from 0 to 1 inclusive (levels >= 2).
std::vector<double> alpha_levels(int levels);

}  // namespace fuzzrel
