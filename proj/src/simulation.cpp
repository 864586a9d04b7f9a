#include "fuzzrel/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>

#include <fmt/format.h>
#include <omp.h>

#include "fuzzrel/errors.hpp"
#include "rng.hpp"

namespace fuzzrel {
namespace {

// Transition table read straight off the model description. Deliberately
// independent of build_generator so the simulation checks it.
struct Exit {
  StateId to;
  double rate;
};

struct Transitions {
  std::array<std::array<Exit, 3>, kNumStates> exits{};
  std::array<std::size_t, kNumStates> count{};

  void add(StateId from, StateId to, double rate) {
    if (rate > 0.0) exits[index(from)][count[index(from)]++] = {to, rate};
  }
};

Transitions transitions(const SystemParams& p, ChainMode mode) {
  Transitions t;
  // Two operating units plus the standby can fail; a covered failure
  // switches the standby in, an uncovered one is an unsafe failure.
  const double fail3 = 2.0 * p.lambda + p.theta;
  t.add(StateId::S3, StateId::S2, p.c * fail3);
  t.add(StateId::S3, StateId::UF1, (1.0 - p.c) * fail3);
  t.add(StateId::S2, StateId::S3, p.mu);
  t.add(StateId::S2, StateId::S1, p.c * 2.0 * p.lambda);
  t.add(StateId::S2, StateId::UF2, (1.0 - p.c) * 2.0 * p.lambda);
  t.add(StateId::S1, StateId::S2, p.mu);
  t.add(StateId::S1, StateId::S0, p.lambda);
  if (mode == ChainMode::Availability) {
    t.add(StateId::UF1, StateId::S3, p.beta);
    t.add(StateId::UF2, StateId::S2, p.beta);
    t.add(StateId::S0, StateId::S1, p.mu);
  }
  return t;
}

struct Jump {
  double holding;
  StateId next;
};

// holding is +inf in a state without exits.
Jump step(const Transitions& t, StateId s, SplitMix64& rng) {
  const auto i = index(s);
  double total = 0.0;
  for (std::size_t k = 0; k < t.count[i]; ++k) total += t.exits[i][k].rate;
  if (total == 0.0) return {std::numeric_limits<double>::infinity(), s};

  const double holding = -std::log1p(-rng.uniform()) / total;
  double pick = rng.uniform() * total;
  for (std::size_t k = 0; k + 1 < t.count[i]; ++k) {
    if (pick < t.exits[i][k].rate) return {holding, t.exits[i][k].to};
    pick -= t.exits[i][k].rate;
  }
  return {holding, t.exits[i][t.count[i] - 1].to};
}

double first_passage(const Transitions& t, SplitMix64& rng) {
  StateId s = StateId::S3;
  double clock = 0.0;
  while (is_up(s)) {
    const Jump j = step(t, s, rng);
    clock += j.holding;
    s = j.next;
  }
  return clock;
}

// Up-time per batch over [warmup, horizon].
std::vector<double> batch_uptime(const Transitions& t, const SimConfig& cfg, SplitMix64& rng) {
  const double start = cfg.warmup_fraction * cfg.horizon;
  const double width = (cfg.horizon - start) / cfg.batches;
  std::vector<double> up(static_cast<std::size_t>(cfg.batches), 0.0);

  StateId s = StateId::S3;
  double clock = 0.0;
  while (clock < cfg.horizon) {
    const Jump j = step(t, s, rng);
    const double leave = std::min(clock + j.holding, cfg.horizon);
    if (is_up(s) && leave > start) {
      // Spread [max(clock, start), leave) over the batches it overlaps.
      double a = std::max(clock, start);
      while (a < leave) {
        auto b = static_cast<std::size_t>((a - start) / width);
        b = std::min(b, up.size() - 1);
        const double batch_end = b + 1 == up.size() ? cfg.horizon : start + width * static_cast<double>(b + 1);
        const double e = std::min(leave, batch_end);
        up[b] += e - a;
        a = e;
      }
    }
    clock += j.holding;
    s = j.next;
  }
  for (double& v : up) v /= width;
  return up;
}

// Recursive halving keeps the sum independent of how the values were
// produced.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) return std::accumulate(v.begin(), v.end(), 0.0);
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

SimEstimate summarize(std::span<const double> samples, std::uint64_t replications) {
  const auto n = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / n;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - mean) * (samples[i] - mean);
  const double var = samples.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n), replications};
}

}  // namespace

void SimConfig::validate() const {
  params.validate(ChainMode::Reliability, Validation::Strict);
  if (replications < 1) throw ValidationError("replications must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon must be > 0");
  if (batches < 2) throw ValidationError("batches must be >= 2");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    throw ValidationError("warmup_fraction must lie in [0, 1)");
  }
}

SimEstimate simulate_mttf(const SimConfig& cfg, const Execution& exec) {
  cfg.validate();
  const Transitions t = transitions(cfg.params, ChainMode::Reliability);
  std::vector<double> times(cfg.replications);
  const auto count = static_cast<std::int64_t>(cfg.replications);

#pragma omp parallel for schedule(static) if (exec.is_parallel()) num_threads(resolved_threads(exec))
  for (std::int64_t r = 0; r < count; ++r) {
    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    times[static_cast<std::size_t>(r)] = first_passage(t, rng);
  }
  return summarize(times, cfg.replications);
}

SimEstimate simulate_availability(const SimConfig& cfg, const Execution& exec) {
  cfg.validate();
  cfg.params.validate(ChainMode::Availability, Validation::Strict);
  const Transitions t = transitions(cfg.params, ChainMode::Availability);
  const auto nb = static_cast<std::size_t>(cfg.batches);
  std::vector<double> means(cfg.replications * nb);
  const auto count = static_cast<std::int64_t>(cfg.replications);

#pragma omp parallel for schedule(dynamic, 1) if (exec.is_parallel()) num_threads(resolved_threads(exec))
  for (std::int64_t r = 0; r < count; ++r) {
    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    const std::vector<double> up = batch_uptime(t, cfg, rng);
    std::copy(up.begin(), up.end(), means.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * nb));
  }
  return summarize(means, cfg.replications);
}

std::vector<PathStep> sample_path(const SimConfig& cfg, ChainMode mode, std::uint64_t replication) {
  cfg.validate();
  cfg.params.validate(mode, Validation::Strict);
  const Transitions t = transitions(cfg.params, mode);
  SplitMix64 rng(stream_seed(cfg.seed, replication));

  std::vector<PathStep> path{{0.0, StateId::S3}};
  double clock = 0.0;
  StateId s = StateId::S3;
  while (true) {
    if (mode == ChainMode::Reliability && !is_up(s)) break;
    const Jump j = step(t, s, rng);
    clock += j.holding;
    if (mode == ChainMode::Availability && clock >= cfg.horizon) break;
    if (!std::isfinite(clock)) break;
    s = j.next;
    path.push_back({clock, s});
  }
  return path;
}

}  // namespace fuzzrel
