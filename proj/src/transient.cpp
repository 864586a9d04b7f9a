#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>
#include <fmt/format.h>

#include "fuzzrel/errors.hpp"
#include "fuzzrel/markov.hpp"

namespace fuzzrel {
namespace {

// Poisson mass allowed outside the summed window.
constexpr double kTruncation = 1e-10;

// Above this many expected jumps the dense exponential is cheaper and no
// less accurate than summing the series.
constexpr double kUniformizationLimit = 2.0e4;

using RowVector = Eigen::Matrix<double, 1, 6>;

struct PoissonWindow {
  std::size_t left = 0;
  std::vector<double> weights;  // normalized, weights[k] is for left + k
};

// Weights computed outward from the mode so no term underflows before it
// matters; the window stops once the relative tail is below the truncation
// bound on each side.
PoissonWindow poisson_window(double rate_t) {
  const auto mode = static_cast<std::size_t>(std::floor(rate_t));
  const double cutoff = kTruncation * 1e-3;

  std::vector<double> right{1.0};
  for (std::size_t k = mode;; ++k) {
    const double next = right.back() * rate_t / static_cast<double>(k + 1);
    if (next < cutoff && static_cast<double>(k) > rate_t) break;
    right.push_back(next);
  }
  std::vector<double> left;
  double w = 1.0;
  for (std::size_t k = mode; k > 0; --k) {
    w *= static_cast<double>(k) / rate_t;
    if (w < cutoff) break;
    left.push_back(w);
  }

  PoissonWindow out;
  out.left = mode - left.size();
  out.weights.assign(left.rbegin(), left.rend());
  out.weights.insert(out.weights.end(), right.begin(), right.end());
  double total = 0.0;
  for (double v : out.weights) total += v;
  for (double& v : out.weights) v /= total;
  return out;
}

RowVector uniformized(const GeneratorMatrix& g, const RowVector& p0, double t) {
  double rate = 0.0;
  for (std::size_t i = 0; i < kNumStates; ++i) rate = std::max(rate, g.exit_rate(kAllStates[i]));
  if (rate == 0.0) return p0;

  const RateMatrix jump = RateMatrix::Identity() + g.rates / rate;
  const PoissonWindow window = poisson_window(rate * t);

  RowVector v = p0;
  for (std::size_t k = 0; k < window.left; ++k) v = v * jump;
  RowVector acc = RowVector::Zero();
  for (double w : window.weights) {
    acc += w * v;
    v = v * jump;
  }
  return acc;
}

RowVector exponentiated(const GeneratorMatrix& g, const RowVector& p0, double t) {
  const RateMatrix scaled = g.rates * t;
  const RateMatrix e = scaled.exp();
  return p0 * e;
}

}  // namespace

StateProbabilities transient_probs(const GeneratorMatrix& g, double t, TransientMethod method) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError(fmt::format("time must be >= 0 (got {})", t));
  }
  RowVector p0;
  for (std::size_t i = 0; i < kNumStates; ++i) p0(i) = g.initial[i];

  if (method == TransientMethod::Auto) {
    double rate = 0.0;
    for (StateId s : kAllStates) rate = std::max(rate, g.exit_rate(s));
    method = rate * t > kUniformizationLimit ? TransientMethod::MatrixExponential
                                             : TransientMethod::Uniformization;
  }

  const RowVector p = t == 0.0 ? p0
                     : method == TransientMethod::Uniformization ? uniformized(g, p0, t)
                                                                 : exponentiated(g, p0, t);

  StateProbabilities out;
  out.t = t;
  double total = 0.0;
  for (std::size_t i = 0; i < kNumStates; ++i) {
    out.p[i] = std::clamp(p(i), 0.0, 1.0);
    total += out.p[i];
  }
  for (double& v : out.p) v /= total;
  return out;
}

}  // namespace fuzzrel
