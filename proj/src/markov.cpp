#include "fuzzrel/markov.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "fuzzrel/errors.hpp"

namespace fuzzrel {

std::string_view to_string(StateId s) {
  switch (s) {
    case StateId::S3: return "S3";
    case StateId::S2: return "S2";
    case StateId::S1: return "S1";
    case StateId::S0: return "S0";
    case StateId::UF1: return "UF1";
    case StateId::UF2: return "UF2";
  }
  return "?";
}

void SystemParams::validate(ChainMode mode, Validation check) const {
  auto fail = [](std::string_view what, double v) {
    throw ValidationError(fmt::format("invalid parameter: {} (got {})", what, v));
  };
  if (!std::isfinite(lambda) || !(lambda > 0.0)) fail("lambda must be > 0", lambda);
  if (!std::isfinite(theta) || !(theta >= 0.0)) fail("theta must be >= 0", theta);
  if (!std::isfinite(mu) || !(mu >= 0.0)) fail("mu must be >= 0", mu);
  if (!std::isfinite(c) || c < 0.0 || c > 1.0) fail("c must lie in [0, 1]", c);
  if (!std::isfinite(beta) || !(beta > 0.0)) fail("beta must be > 0", beta);
  if (check == Validation::Strict && theta > lambda) {
    throw ValidationError(
        fmt::format("invalid parameter: theta ({}) must not exceed lambda ({})", theta, lambda));
  }
  if (mode == ChainMode::Availability && !(mu > 0.0)) {
    fail("mu must be > 0 for availability analysis", mu);
  }
}

GeneratorMatrix build_generator(const SystemParams& p, ChainMode mode, Validation check) {
  p.validate(mode, check);

  GeneratorMatrix g;
  g.mode = mode;
  auto set = [&g](StateId from, StateId to, double rate) {
    g.rates(index(from), index(to)) = rate;
  };

  const double s3_out = 2.0 * p.lambda + p.theta;
  set(StateId::S3, StateId::S2, p.c * s3_out);
  set(StateId::S3, StateId::UF1, (1.0 - p.c) * s3_out);
  set(StateId::S2, StateId::S3, p.mu);
  set(StateId::S2, StateId::S1, 2.0 * p.c * p.lambda);
  set(StateId::S2, StateId::UF2, 2.0 * (1.0 - p.c) * p.lambda);
  set(StateId::S1, StateId::S2, p.mu);
  set(StateId::S1, StateId::S0, p.lambda);

  if (mode == ChainMode::Availability) {
    set(StateId::UF1, StateId::S3, p.beta);
    set(StateId::UF2, StateId::S2, p.beta);
    set(StateId::S0, StateId::S1, p.mu);
  }

  for (std::size_t i = 0; i < kNumStates; ++i) {
    double out = 0.0;
    for (std::size_t j = 0; j < kNumStates; ++j) {
      if (j != i) out += g.rates(i, j);
    }
    g.rates(i, i) = -out;
  }
  return g;
}

LaplaceStateVector laplace_state_probs(const SystemParams& params, double s, Validation check) {
  if (!std::isfinite(s) || !(s > 0.0)) {
    throw ValidationError(fmt::format("Laplace variable s must be > 0 (got {})", s));
  }
  const GeneratorMatrix g = build_generator(params, ChainMode::Reliability, check);

  const RateMatrix a = s * RateMatrix::Identity() - g.rates.transpose();
  Eigen::Matrix<double, 6, 1> rhs;
  for (std::size_t i = 0; i < kNumStates; ++i) rhs(i) = g.initial[i];

  Eigen::FullPivLU<RateMatrix> lu(a);
  if (!lu.isInvertible()) throw SolverError("singular Laplace system");
  const Eigen::Matrix<double, 6, 1> x = lu.solve(rhs);

  LaplaceStateVector out;
  out.s = s;
  for (std::size_t i = 0; i < kNumStates; ++i) out.ptilde[i] = x(i);
  return out;
}

double mttf(const SystemParams& params, Validation check) {
  const GeneratorMatrix g = build_generator(params, ChainMode::Reliability, check);
  // Transient block over S3, S2, S1.
  const Eigen::Matrix3d qt = g.rates.topLeftCorner<3, 3>();
  Eigen::FullPivLU<Eigen::Matrix3d> lu(qt);
  if (!lu.isInvertible()) throw SolverError("transient block is singular; absorption is not certain");
  const Eigen::Vector3d m = lu.solve(-Eigen::Vector3d::Ones());
  return m(0);
}

double failure_density_laplace(const SystemParams& params, double s, Validation check) {
  const LaplaceStateVector v = laplace_state_probs(params, s, check);
  // Down states start empty, so the initial-value terms vanish.
  return s * (v[StateId::S0] + v[StateId::UF1] + v[StateId::UF2]);
}

double reliability_at(const SystemParams& params, double t, Validation check,
                      TransientMethod method) {
  const GeneratorMatrix g = build_generator(params, ChainMode::Reliability, check);
  return transient_probs(g, t, method).up();
}

StateArray stationary_distribution(const SystemParams& params, Validation check) {
  const GeneratorMatrix g = build_generator(params, ChainMode::Availability, check);

  // States reachable from S3; with c = 1 the UF states drop out, with c = 0
  // only S3 and UF1 remain.
  std::array<bool, kNumStates> reach{};
  std::vector<std::size_t> stack{index(StateId::S3)};
  reach[index(StateId::S3)] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < kNumStates; ++j) {
      if (j != i && g.rates(i, j) > 0.0 && !reach[j]) {
        reach[j] = true;
        stack.push_back(j);
      }
    }
  }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < kNumStates; ++i) {
    if (reach[i]) live.push_back(i);
  }
  const auto n = static_cast<Eigen::Index>(live.size());

  // pi Q = 0 with one balance equation replaced by the normalization.
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index k = 0; k < n; ++k) a(r, k) = g.rates(live[k], live[r]);
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw SolverError("availability chain is reducible on its reachable set");
  const Eigen::VectorXd x = lu.solve(rhs);

  StateArray pi{};
  for (Eigen::Index k = 0; k < n; ++k) pi[live[k]] = std::max(0.0, x(k));
  double total = 0.0;
  for (double v : pi) total += v;
  for (double& v : pi) v /= total;
  return pi;
}

double steady_availability(const SystemParams& params, Validation check) {
  const StateArray pi = stationary_distribution(params, check);
  return pi[index(StateId::S3)] + pi[index(StateId::S2)] + pi[index(StateId::S1)];
}

}  // namespace fuzzrel
