#include "fuzzrel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>

#include <fmt/format.h>
#include <omp.h>

#include "fuzzrel/errors.hpp"
#include "rng.hpp"

namespace fuzzrel {

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::Lambda: return "lambda";
    case Parameter::Theta: return "theta";
    case Parameter::Mu: return "mu";
    case Parameter::Beta: return "beta";
  }
  return "?";
}

Parameter parse_parameter(std::string_view name) {
  for (Parameter p : kAllParameters) {
    if (to_string(p) == name) return p;
  }
  throw ValidationError(fmt::format("unknown parameter '{}'", name));
}

std::string_view to_string(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::CornerScan: return "corner-scan";
    case BoundsMethod::MultiStartLocal: return "multi-start-local";
    case BoundsMethod::GridRefine: return "grid";
  }
  return "?";
}

const FuzzyNumber& FuzzySystemParams::get(Parameter p) const {
  switch (p) {
    case Parameter::Lambda: return lambda;
    case Parameter::Theta: return theta;
    case Parameter::Mu: return mu;
    case Parameter::Beta: return beta;
  }
  return lambda;
}

void FuzzySystemParams::validate() const {
  auto positive = [](const FuzzyNumber& f, std::string_view name, bool allow_zero) {
    const Interval s = f.support();
    if (allow_zero ? s.lo < 0.0 : !(s.lo > 0.0)) {
      throw ValidationError(fmt::format("support of {} must be {} 0 (starts at {})", name,
                                        allow_zero ? ">=" : ">", s.lo));
    }
  };
  positive(lambda, "lambda", false);
  positive(theta, "theta", true);
  positive(mu, "mu", true);
  positive(beta, "beta", false);
  if (!(c >= 0.0 && c <= 1.0)) throw ValidationError(fmt::format("c must lie in [0, 1] (got {})", c));
}

SystemParams FuzzySystemParams::modal() const {
  return {lambda.modal_value(), theta.modal_value(), mu.modal_value(), c, beta.modal_value()};
}

Metric Metric::reliability_at(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError(fmt::format("reliability time must be >= 0 (got {})", t));
  }
  return Metric(Kind::ReliabilityAtT, t);
}

std::string Metric::name() const {
  switch (kind_) {
    case Kind::Mtbf: return "mtbf";
    case Kind::SteadyAvailability: return "availability";
    case Kind::ReliabilityAtT: return fmt::format("reliability(t={})", t_);
  }
  return "?";
}

std::span<const Parameter> Metric::active_parameters() const {
  static constexpr std::array<Parameter, 3> kRates{Parameter::Lambda, Parameter::Theta, Parameter::Mu};
  if (uses_beta()) return kAllParameters;
  return kRates;
}

double Metric::evaluate(const SystemParams& p, Validation check) const {
  switch (kind_) {
    case Kind::Mtbf: return mttf(p, check);
    case Kind::SteadyAvailability: return steady_availability(p, check);
    case Kind::ReliabilityAtT: return fuzzrel::reliability_at(p, t_, check);
  }
  return 0.0;
}

SystemParams to_system_params(const ParameterPoint& x, double c) {
  return {x[0], x[1], x[2], c, x[3]};
}

ParameterBox alpha_box(const FuzzySystemParams& fp, double alpha) {
  ParameterBox box;
  for (Parameter p : kAllParameters) box[static_cast<std::size_t>(p)] = fp.get(p).alpha_cut(alpha);
  return box;
}

std::vector<double> alpha_levels(int levels) {
  if (levels < 2) throw ValidationError(fmt::format("need at least 2 alpha levels (got {})", levels));
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(i) / (levels - 1);
  return out;
}

namespace {

constexpr std::size_t kTheta = static_cast<std::size_t>(Parameter::Theta);
constexpr std::size_t kLambda = static_cast<std::size_t>(Parameter::Lambda);

// The crisp kernel restricted to one alpha box, in the coordinates the
// searches work with.
class BoxObjective {
 public:
  BoxObjective(const FuzzySystemParams& fp, const Metric& metric, double alpha)
      : fp_(fp), metric_(metric), box_(alpha_box(fp, alpha)) {
    base_ = {fp.lambda.modal_value(), fp.theta.modal_value(), fp.mu.modal_value(),
             fp.beta.modal_value()};
    for (Parameter p : metric.active_parameters()) {
      const auto i = static_cast<std::size_t>(p);
      base_[i] = box_[i].lo;
      if (box_[i].width() > 0.0) free_.push_back(i);
    }
  }

  const ParameterBox& box() const { return box_; }
  std::size_t dims() const { return free_.size(); }
  std::span<const std::size_t> free_axes() const { return free_; }
  const ParameterPoint& base() const { return base_; }

  /// Maps u in [0,1]^dims onto the box; clamps u first.
  ParameterPoint point(std::span<double> u) const {
    ParameterPoint x = base_;
    for (std::size_t k = 0; k < free_.size(); ++k) {
      u[k] = std::clamp(u[k], 0.0, 1.0);
      const Interval& iv = box_[free_[k]];
      x[free_[k]] = u[k] == 1.0 ? iv.hi : iv.lo + u[k] * iv.width();
    }
    return project(x);
  }

  bool feasible(const ParameterPoint& x) const {
    return fp_.coupling == ThetaCoupling::Independent || x[kTheta] <= x[kLambda];
  }

  ParameterPoint project(ParameterPoint x) const {
    if (fp_.coupling == ThetaCoupling::Joint) x[kTheta] = std::min(x[kTheta], x[kLambda]);
    return x;
  }

  double operator()(const ParameterPoint& x) const {
    const Validation check = fp_.coupling == ThetaCoupling::Independent
                                 ? Validation::RelaxStandbyBound
                                 : Validation::Strict;
    try {
      return metric_.evaluate(to_system_params(x, fp_.c), check);
    } catch (const Error& e) {
      throw SolverError(fmt::format("{} failed at (lambda={}, theta={}, mu={}, beta={}, c={}): {}",
                                    metric_.name(), x[0], x[1], x[2], x[3], fp_.c, e.what()));
    }
  }

 private:
  const FuzzySystemParams& fp_;
  const Metric& metric_;
  ParameterBox box_;
  ParameterPoint base_{};
  std::vector<std::size_t> free_;
};

struct Candidate {
  double value = std::numeric_limits<double>::quiet_NaN();
  ParameterPoint x{};

  bool empty() const { return std::isnan(value); }
};

// Nelder-Mead on the unit cube with every trial vertex clamped back into it.
// `sign` = +1 minimizes, -1 maximizes.
Candidate projected_simplex(const BoxObjective& f, std::vector<double> start, double sign,
                            const SolverOptions& opts) {
  const std::size_t n = start.size();
  struct Vertex {
    std::vector<double> u;
    double score;
    ParameterPoint x;
  };
  int evaluations = 0;
  auto make = [&](std::vector<double> u) {
    ParameterPoint x = f.point(u);
    ++evaluations;
    return Vertex{std::move(u), sign * f(x), x};
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back(make(start));
  constexpr double kStep = 0.25;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> u = start;
    u[i] += u[i] + kStep <= 1.0 ? kStep : -kStep;
    simplex.push_back(make(std::move(u)));
  }

  auto blend = [n](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  while (evaluations < opts.max_evaluations) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.score < b.score; });
    const double best = simplex.front().score;
    const double worst = simplex.back().score;
    double diameter = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        diameter = std::max(diameter, std::abs(simplex[v].u[i] - simplex[0].u[i]));
      }
    }
    if (worst - best <= opts.tolerance * std::max(1.0, std::abs(best)) || diameter < 1e-12) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].u[i] / static_cast<double>(n);
    }
    const Vertex& worst_v = simplex.back();
    Vertex reflected = make(blend(centroid, worst_v.u, -1.0));
    if (reflected.score < simplex.front().score) {
      Vertex expanded = make(blend(centroid, worst_v.u, -2.0));
      simplex.back() = expanded.score < reflected.score ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.score < simplex[n - 1].score) {
      simplex.back() = std::move(reflected);
      continue;
    }
    const bool outside = reflected.score < worst_v.score;
    Vertex contracted = outside ? make(blend(centroid, reflected.u, 0.5))
                                : make(blend(centroid, worst_v.u, 0.5));
    if (contracted.score < std::min(reflected.score, worst_v.score)) {
      simplex.back() = std::move(contracted);
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) simplex[v] = make(blend(simplex[0].u, simplex[v].u, 0.5));
  }

  const auto it = std::min_element(simplex.begin(), simplex.end(),
                                   [](const Vertex& a, const Vertex& b) { return a.score < b.score; });
  return {sign * it->score, it->x};
}

bool better(double value, const Candidate& incumbent, double sign) {
  return incumbent.empty() || sign * value < sign * incumbent.value;
}

// First exception (by loop index) raised inside an OpenMP loop.
class FirstError {
 public:
  void capture(std::size_t index) {
#pragma omp critical(fuzzrel_first_error)
    {
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::size_t index_ = 0;
};

}  // namespace

BoundsResult characteristic_bounds(const FuzzySystemParams& fp, const Metric& metric, double alpha,
                                   const SolverOptions& opts) {
  fp.validate();
  const BoxObjective f(fp, metric, alpha);
  const std::size_t n = f.dims();

  BoundsResult out;
  out.alpha = alpha;
  out.box = f.box();

  Candidate lo, hi;
  const std::size_t corners = std::size_t{1} << n;
  std::vector<std::vector<double>> starts;
  std::vector<std::vector<double>> fallback;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = (mask >> k) & 1U ? 1.0 : 0.0;
    ParameterPoint raw = f.base();
    for (std::size_t k = 0; k < n; ++k) {
      const Interval& iv = f.box()[f.free_axes()[k]];
      raw[f.free_axes()[k]] = u[k] == 1.0 ? iv.hi : iv.lo;
    }
    if (!f.feasible(raw)) {
      fallback.push_back(std::move(u));
      continue;
    }
    const double v = f(raw);
    if (better(v, lo, 1.0)) lo = {v, raw};
    if (better(v, hi, -1.0)) hi = {v, raw};
    starts.push_back(std::move(u));
  }
  if (starts.empty()) {
    // Joint coupling with no feasible corner: use projected corners.
    for (auto& u : fallback) {
      const ParameterPoint x = f.point(u);
      const double v = f(x);
      if (better(v, lo, 1.0)) lo = {v, x};
      if (better(v, hi, -1.0)) hi = {v, x};
      starts.push_back(std::move(u));
    }
  }
  out.method = BoundsMethod::CornerScan;

  if (n > 0) {
    SplitMix64 rng(opts.seed);
    for (int i = 0; i < opts.interior_starts; ++i) {
      std::vector<double> u(n);
      for (double& v : u) v = rng.uniform();
      starts.push_back(std::move(u));
    }
    for (const auto& s : starts) {
      const Candidate cmin = projected_simplex(f, s, 1.0, opts);
      if (cmin.value < lo.value) {
        lo = cmin;
        out.method = BoundsMethod::MultiStartLocal;
      }
      const Candidate cmax = projected_simplex(f, s, -1.0, opts);
      if (cmax.value > hi.value) {
        hi = cmax;
        out.method = BoundsMethod::MultiStartLocal;
      }
    }
  }

  out.bounds = {lo.value, hi.value};
  out.argmin = lo.x;
  out.argmax = hi.x;
  return out;
}

BoundsResult brute_force_bounds(const FuzzySystemParams& fp, const Metric& metric, double alpha,
                                int grid_per_axis, const Execution& exec) {
  if (grid_per_axis < 2) {
    throw ValidationError(fmt::format("grid_per_axis must be >= 2 (got {})", grid_per_axis));
  }
  fp.validate();
  const BoxObjective f(fp, metric, alpha);
  const std::span<const Parameter> axes = metric.active_parameters();
  const auto g = static_cast<std::size_t>(grid_per_axis);
  std::size_t total = 1;
  for (std::size_t k = 0; k < axes.size(); ++k) total *= g;

  auto node = [&](std::size_t flat) {
    ParameterPoint x = f.base();
    for (Parameter p : axes) {
      const auto i = static_cast<std::size_t>(p);
      const std::size_t k = flat % g;
      flat /= g;
      const Interval& iv = f.box()[i];
      x[i] = k == g - 1 ? iv.hi : iv.lo + iv.width() * static_cast<double>(k) / static_cast<double>(g - 1);
    }
    return x;
  };

  struct Best {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t lo_at = std::numeric_limits<std::size_t>::max();
    std::size_t hi_at = std::numeric_limits<std::size_t>::max();

    void offer(double v, std::size_t at) {
      if (v < lo || (v == lo && at < lo_at)) { lo = v; lo_at = at; }
      if (v > hi || (v == hi && at < hi_at)) { hi = v; hi_at = at; }
    }
    void merge(const Best& o) {
      if (o.lo_at != std::numeric_limits<std::size_t>::max()) offer(o.lo, o.lo_at);
      if (o.hi_at != std::numeric_limits<std::size_t>::max()) offer(o.hi, o.hi_at);
    }
  };

  Best best;
  if (!exec.is_parallel()) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      const ParameterPoint x = node(flat);
      if (f.feasible(x)) best.offer(f(x), flat);
    }
  } else {
    FirstError error;
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel num_threads(resolved_threads(exec))
    {
      Best local;
#pragma omp for schedule(static)
      for (std::int64_t flat = 0; flat < count; ++flat) {
        try {
          const ParameterPoint x = node(static_cast<std::size_t>(flat));
          if (f.feasible(x)) local.offer(f(x), static_cast<std::size_t>(flat));
        } catch (...) {
          error.capture(static_cast<std::size_t>(flat));
        }
      }
#pragma omp critical(fuzzrel_grid_merge)
      best.merge(local);
    }
    error.rethrow();
  }

  if (best.lo_at == std::numeric_limits<std::size_t>::max()) {
    throw SolverError(fmt::format("no feasible grid node at alpha={}", alpha));
  }
  BoundsResult out;
  out.alpha = alpha;
  out.box = f.box();
  out.bounds = {best.lo, best.hi};
  out.argmin = node(best.lo_at);
  out.argmax = node(best.hi_at);
  out.method = BoundsMethod::GridRefine;
  return out;
}

std::vector<BoundsResult> bounds_per_alpha(const FuzzySystemParams& fp, const Metric& metric,
                                           std::span<const double> alphas,
                                           const SolverOptions& opts, const Execution& exec) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 0.0 && alphas[i] <= 1.0) || (i > 0 && !(alphas[i] > alphas[i - 1]))) {
      throw ValidationError("alpha levels must be strictly increasing within [0, 1]");
    }
  }
  std::vector<BoundsResult> rows(alphas.size());
  if (!exec.is_parallel()) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      rows[i] = characteristic_bounds(fp, metric, alphas[i], opts);
    }
    return rows;
  }
  FirstError error;
  const auto count = static_cast<std::int64_t>(alphas.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolved_threads(exec))
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const auto k = static_cast<std::size_t>(i);
      rows[k] = characteristic_bounds(fp, metric, alphas[k], opts);
    } catch (...) {
      error.capture(static_cast<std::size_t>(i));
    }
  }
  error.rethrow();
  return rows;
}

MembershipCurve membership_curve(const FuzzySystemParams& fp, const Metric& metric,
                                 std::span<const double> alphas, const SolverOptions& opts,
                                 const Execution& exec) {
  if (alphas.empty() || alphas.front() != 0.0 || alphas.back() != 1.0) {
    throw ValidationError("alpha levels of a membership curve must start at 0 and end at 1");
  }
  const std::vector<BoundsResult> results = bounds_per_alpha(fp, metric, alphas, opts, exec);
  std::vector<CurveRow> rows;
  rows.reserve(results.size());
  for (const BoundsResult& r : results) rows.push_back({r.alpha, r.bounds});
  return MembershipCurve(std::move(rows));
}

}  // namespace fuzzrel
