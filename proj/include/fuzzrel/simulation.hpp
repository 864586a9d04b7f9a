#pragma once

// Discrete-event simulation of the repairable system with competing
// exponential clocks in each state. It shares no code with the analytic
// solvers and serves as their statistical cross-check.

#include <cstdint>
#include <vector>

#include "fuzzrel/markov.hpp"
#include "fuzzrel/parallel.hpp"

namespace fuzzrel {

struct SimConfig {
  SystemParams params;
  std::uint64_t replications = 10000;
  double horizon = 1.0e4;         // availability runs only
  std::uint64_t seed = 1;
  int batches = 20;               // batch means per availability run
  double warmup_fraction = 0.01;  // prefix of the horizon discarded

  void validate() const;
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t replications = 0;
};

/// Mean first-hitting time of {S0, UF1, UF2} from S3.
SimEstimate simulate_mttf(const SimConfig& cfg, const Execution& exec = {});

/// Long-run fraction of time in {S3, S2, S1}. Each replication is one run of
/// length `horizon`; the standard error comes from the pooled batch means.
SimEstimate simulate_availability(const SimConfig& cfg, const Execution& exec = {});

struct PathStep {
  double time = 0.0;  // entry time
  StateId state = StateId::S3;
};

/// One sample path from S3 until absorption (Reliability) or until
/// `horizon` (Availability), using the stream for `replication`.
std::vector<PathStep> sample_path(const SimConfig& cfg, ChainMode mode, std::uint64_t replication);

}  // namespace fuzzrel
