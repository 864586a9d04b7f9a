#pragma once

// Six-state CTMC of a repairable system with two active units in parallel,
// one warm standby, imperfect failure coverage and reboot recovery.
//
// States count good units (S3, S2, S1), the exhausted state S0 (the last
// operating unit failed while the other two wait for repair), and the unsafe
// failures UF1/UF2 entered when a failure is not covered while three or two
// units are good.
//
// Reliability mode makes S0, UF1 and UF2 absorbing; its mean absorption time
// from S3 is the crisp MTBF kernel (MTTF of the absorbing chain). Availability
// mode returns the down states to service: UF1 -> S3 and UF2 -> S2 at the
// reboot rate, S0 -> S1 at the repair rate.

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace fuzzrel {

enum class StateId : std::size_t { S3 = 0, S2, S1, S0, UF1, UF2 };

inline constexpr std::size_t kNumStates = 6;

inline constexpr std::array<StateId, kNumStates> kAllStates{
    StateId::S3, StateId::S2, StateId::S1, StateId::S0, StateId::UF1, StateId::UF2};

constexpr std::size_t index(StateId s) { return static_cast<std::size_t>(s); }

constexpr bool is_up(StateId s) {
  return s == StateId::S3 || s == StateId::S2 || s == StateId::S1;
}

std::string_view to_string(StateId s);

enum class ChainMode { Reliability, Availability };

/// Whether the standby-rate bound theta <= lambda is enforced. The optimizer
/// relaxes it when it treats the parameter box as independent intervals.
enum class Validation { Strict, RelaxStandbyBound };

struct SystemParams {
  double lambda = 1.0;  // operating-unit failure rate
  double theta = 0.0;   // standby failure rate
  double mu = 1.0;      // repair rate
  double c = 1.0;       // coverage probability
  double beta = 1.0;    // reboot rate, availability only

  /// Throws ValidationError. Availability mode additionally needs mu > 0.
  void validate(ChainMode mode = ChainMode::Reliability,
                Validation check = Validation::Strict) const;
};

using RateMatrix = Eigen::Matrix<double, 6, 6>;
using StateArray = std::array<double, kNumStates>;

struct GeneratorMatrix {
  ChainMode mode = ChainMode::Reliability;
  RateMatrix rates = RateMatrix::Zero();
  StateArray initial{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};

  double rate(StateId from, StateId to) const { return rates(index(from), index(to)); }
  double exit_rate(StateId s) const { return -rates(index(s), index(s)); }
};

GeneratorMatrix build_generator(const SystemParams& params, ChainMode mode,
                                Validation check = Validation::Strict);

struct StateProbabilities {
  double t = 0.0;
  StateArray p{};

  double operator[](StateId s) const { return p[index(s)]; }
  double up() const { return p[0] + p[1] + p[2]; }
};

struct LaplaceStateVector {
  double s = 1.0;
  StateArray ptilde{};

  double operator[](StateId s) const { return ptilde[index(s)]; }
};

/// Solves (s I - Q^T) P~ = e_S3 for the reliability-mode chain.
LaplaceStateVector laplace_state_probs(const SystemParams& params, double s,
                                       Validation check = Validation::Strict);

/// Mean time to absorption from S3, from the 3x3 transient block Q_T m = -1.
double mttf(const SystemParams& params, Validation check = Validation::Strict);

enum class TransientMethod { Auto, Uniformization, MatrixExponential };

/// State distribution at time t starting from `g.initial`.
StateProbabilities transient_probs(const GeneratorMatrix& g, double t,
                                   TransientMethod method = TransientMethod::Auto);

/// R(t) = P3(t) + P2(t) + P1(t) of the reliability-mode chain.
double reliability_at(const SystemParams& params, double t,
                      Validation check = Validation::Strict,
                      TransientMethod method = TransientMethod::Auto);

/// Laplace transform of the failure density, s (P~0 + P~UF1 + P~UF2).
double failure_density_laplace(const SystemParams& params, double s,
                               Validation check = Validation::Strict);

/// Stationary distribution of the availability-mode chain restricted to the
/// states reachable from S3 (unreachable states get probability 0).
StateArray stationary_distribution(const SystemParams& params,
                                   Validation check = Validation::Strict);

double steady_availability(const SystemParams& params,
                           Validation check = Validation::Strict);

}  // namespace fuzzrel
