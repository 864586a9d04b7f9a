#pragma once

// Model-definition file (JSON):
//
//   {
//     "lambda": [0.5, 0.6, 0.7, 0.8],          // trapezoid
//     "theta":  [0.1, 0.2, 0.3],               // triangle
//     "mu":     4.0,                           // crisp
//     "beta":   {"breakpoints": [[1, 0], [2, 1], [3, 0]]},
//     "c": 0.9,
//     "metric": "mtbf" | "availability" | {"name": "reliability", "t": 1.5},
//     "alphas": [0, 0.5, 1] | 11,              // list, or a level count
//     "solver": {"seed": 1, "interior_starts": 8, "tolerance": 1e-10,
//                "max_evaluations": 4000, "theta_coupling": "independent"},
//     "simulation": {"replications": 10000, "horizon": 1e4, "seed": 1,
//                    "batches": 20, "warmup_fraction": 0.01},
//     "report_times": [0, 1, 2, 5],
//     "reference": [[1.0, 5.0669, 6.5424], ...]
//   }
//
// Only lambda, theta and mu are required. Errors name the offending field as
// a JSON pointer.

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fuzzrel/optimizer.hpp"
#include "fuzzrel/simulation.hpp"

namespace fuzzrel {

struct ReferenceRow {
  double alpha = 0.0;
  Interval bounds;
};

struct ModelConfig {
  FuzzySystemParams params;
  Metric metric = Metric::mtbf();
  std::vector<double> alphas = alpha_levels(11);
  SolverOptions solver;
  SimConfig simulation;  // params filled from the modal reduction
  std::vector<double> report_times{0.0, 0.5, 1.0, 2.0, 5.0};
  std::vector<ReferenceRow> reference;
};

/// Throws ParseError (wrong shape/type) or ValidationError (bad values).
ModelConfig parse_config(const nlohmann::json& doc);
ModelConfig parse_config_text(std::string_view text);
/// Throws IoError when the file cannot be read.
ModelConfig load_config(const std::filesystem::path& path);

/// scalar | [a,b,c] | [a,b,c,d] | {"breakpoints": [[x, eta], ...]}.
FuzzyNumber parse_fuzzy_number(const nlohmann::json& node, std::string_view field);

/// "mtbf" | "availability" | "reliability" (with t).
Metric parse_metric(std::string_view name, std::optional<double> t);

}  // namespace fuzzrel
