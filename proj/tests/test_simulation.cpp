#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "fuzzrel/errors.hpp"
#include "fuzzrel/markov.hpp"
#include "fuzzrel/simulation.hpp"

using namespace fuzzrel;

namespace {

bool within_3se(const SimEstimate& e, double truth) {
  return std::abs(e.mean - truth) <= 3.0 * e.std_error;
}

bool same_bits(const SimEstimate& a, const SimEstimate& b) {
  return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
         std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 &&
         a.replications == b.replications;
}

}  // namespace

TEST_CASE("pure death chain") {
  SimConfig cfg;
  cfg.params = {1.0, 0.0, 0.0, 1.0, 1.0};
  cfg.replications = 100000;
  cfg.seed = 11;
  const SimEstimate e = simulate_mttf(cfg);
  CHECK(e.replications == 100000);
  CHECK(e.std_error > 0.0);
  CHECK(within_3se(e, 2.0));
}

TEST_CASE("repairable chain matches the hand-solved MTTF") {
  SimConfig cfg;
  cfg.params = {1.0, 0.0, 2.0, 1.0, 1.0};
  cfg.replications = 100000;
  cfg.seed = 12;
  CHECK(within_3se(simulate_mttf(cfg), 4.5));
}

TEST_CASE("seeded runs are reproducible under any schedule") {
  SimConfig cfg;
  cfg.params = {0.6, 0.2, 4.0, 0.9, 2.0};
  cfg.replications = 5000;
  cfg.horizon = 2000.0;
  cfg.seed = 99;
  const SimEstimate a = simulate_mttf(cfg, Execution::serial());
  CHECK(same_bits(a, simulate_mttf(cfg, Execution::serial())));
  CHECK(same_bits(a, simulate_mttf(cfg, Execution::parallel(4))));

  cfg.replications = 3;
  const SimEstimate b = simulate_availability(cfg, Execution::serial());
  CHECK(same_bits(b, simulate_availability(cfg, Execution::serial())));
  CHECK(same_bits(b, simulate_availability(cfg, Execution::parallel(2))));

  cfg.seed = 100;
  CHECK_FALSE(same_bits(a, simulate_mttf(cfg, Execution::serial())));
}

TEST_CASE("coverage semantics on sample paths") {
  SimConfig cfg;
  cfg.params = {0.7, 0.3, 1.0, 1.0, 2.0};
  cfg.horizon = 50.0;
  cfg.seed = 5;
  for (std::uint64_t rep = 0; rep < 2000; ++rep) {
    for (ChainMode mode : {ChainMode::Reliability, ChainMode::Availability}) {
      for (const PathStep& s : sample_path(cfg, mode, rep)) {
        CHECK(s.state != StateId::UF1);
        CHECK(s.state != StateId::UF2);
      }
    }
  }

  cfg.params.c = 0.0;
  for (std::uint64_t rep = 0; rep < 2000; ++rep) {
    const auto path = sample_path(cfg, ChainMode::Reliability, rep);
    REQUIRE(path.size() == 2);
    CHECK(path[0].state == StateId::S3);
    CHECK(path[0].time == 0.0);
    CHECK(path[1].state == StateId::UF1);
    CHECK(path[1].time > 0.0);
  }
}

TEST_CASE("sample paths follow the transition structure") {
  SimConfig cfg;
  cfg.params = {0.6, 0.2, 4.0, 0.9, 2.0};
  cfg.horizon = 200.0;
  cfg.seed = 8;
  const GeneratorMatrix g = build_generator(cfg.params, ChainMode::Availability);
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const auto path = sample_path(cfg, ChainMode::Availability, rep);
    for (std::size_t k = 1; k < path.size(); ++k) {
      CHECK(path[k].time > path[k - 1].time);
      CHECK(g.rate(path[k - 1].state, path[k].state) > 0.0);
    }
    CHECK(path.back().time <= cfg.horizon);
  }
}

TEST_CASE("vanishing failures give availability one") {
  SimConfig cfg;
  cfg.params = {1e-9, 0.0, 4.0, 0.9, 2.0};
  cfg.replications = 2;
  cfg.horizon = 1e4;
  const SimEstimate e = simulate_availability(cfg);
  CHECK(std::abs(e.mean - 1.0) < 1e-6);
  CHECK(e.std_error >= 0.0);
}

TEST_CASE("simulated availability matches the stationary solve") {
  SimConfig cfg;
  cfg.params = {0.6, 0.2, 4.0, 0.9, 2.0};
  cfg.replications = 4;
  cfg.horizon = 1e5;
  cfg.seed = 2017;
  const SimEstimate e = simulate_availability(cfg);
  CHECK(e.replications == 4);
  CHECK(within_3se(e, steady_availability(cfg.params)));
}

TEST_CASE("configuration validation") {
  SimConfig cfg;
  cfg.params = {0.6, 0.2, 4.0, 0.9, 2.0};
  cfg.replications = 0;
  CHECK_THROWS_AS(simulate_mttf(cfg), ValidationError);
  cfg.replications = 10;
  cfg.horizon = 0.0;
  CHECK_THROWS_AS(simulate_availability(cfg), ValidationError);
  cfg.horizon = 100.0;
  cfg.batches = 1;
  CHECK_THROWS_AS(simulate_availability(cfg), ValidationError);
  cfg.batches = 20;
  cfg.params.lambda = -1.0;
  CHECK_THROWS_AS(simulate_mttf(cfg), ValidationError);
}
