#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "fuzzrel/config.hpp"
#include "fuzzrel/decision.hpp"
#include "fuzzrel/errors.hpp"
#include "fuzzrel/markov.hpp"
#include "fuzzrel/simulation.hpp"
#include "fuzzrel/table_io.hpp"

namespace fuzzrel::cli {
namespace {

constexpr int kMembershipSamples = 201;

struct Common {
  std::string config;
  std::optional<std::string> metric;
  std::optional<double> t;
  bool full_precision = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Model definition (JSON)")->required();
    app->add_option("--metric", metric, "mtbf | availability | reliability");
    app->add_option("--t", t, "Mission time for --metric reliability");
    app->add_flag("--full-precision", full_precision, "Print 17 significant digits");
  }

  NumberFormat format() const { return full_precision ? NumberFormat::Full : NumberFormat::Fixed4; }

  ModelConfig load() const {
    ModelConfig cfg = load_config(config);
    if (metric) cfg.metric = parse_metric(*metric, t);
    return cfg;
  }
};

// Output goes to a file when a path is given, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : out_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError(fmt::format("cannot open '{}' for writing", *path));
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void close(const std::optional<std::string>& path) {
    if (!path) return;
    file_.close();
    if (!file_) throw IoError(fmt::format("failed writing '{}'", *path));
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string membership_path(const std::string& out) {
  std::filesystem::path p(out);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_membership.csv")).string();
}

int cmd_metrics(const Common& common, std::ostream& out) {
  const ModelConfig cfg = common.load();
  const SystemParams p = cfg.params.modal();
  const NumberFormat f = common.format();
  p.validate();

  out << "lambda=" << format_number(p.lambda, f) << " theta=" << format_number(p.theta, f)
      << " mu=" << format_number(p.mu, f) << " c=" << format_number(p.c, f)
      << " beta=" << format_number(p.beta, f) << '\n';
  out << "MTTF: " << format_number(mttf(p), f) << '\n';
  if (p.mu > 0.0) {
    out << "Availability: " << format_number(steady_availability(p), f) << '\n';
  } else {
    out << "Availability: n/a (mu = 0)\n";
  }
  out << "t,R(t)\n";
  for (double t : cfg.report_times) {
    out << format_number(t, f) << ',' << format_number(reliability_at(p, t), f) << '\n';
  }
  return kOk;
}

int cmd_alphacut(const Common& common, std::optional<int> levels,
                 const std::optional<std::string>& path, std::ostream& out) {
  ModelConfig cfg = common.load();
  if (levels) cfg.alphas = alpha_levels(*levels);
  const AlphaCutTable table =
      build_table(cfg.params, cfg.metric, cfg.alphas, cfg.solver, execution_from_env());
  Sink sink(path, out);
  write_table_csv(sink.stream(), table, common.format());
  sink.close(path);
  return kOk;
}

int cmd_curve(const Common& common, std::optional<int> levels, const std::string& path,
              std::ostream& out) {
  ModelConfig cfg = common.load();
  if (levels) cfg.alphas = alpha_levels(*levels);
  const MembershipCurve curve =
      membership_curve(cfg.params, cfg.metric, cfg.alphas, cfg.solver, execution_from_env());

  Sink rows(path, out);
  write_curve_csv(rows.stream(), curve, common.format());
  rows.close(path);

  const std::string samples_path = membership_path(path);
  Sink samples(samples_path, out);
  write_membership_samples_csv(samples.stream(), curve, kMembershipSamples, common.format());
  samples.close(samples_path);

  out << "wrote " << path << " and " << samples_path << '\n';
  return kOk;
}

int cmd_invert(const Common& common, double lower, double upper, std::ostream& out) {
  const ModelConfig cfg = common.load();
  const MembershipCurve curve =
      membership_curve(cfg.params, cfg.metric, cfg.alphas, cfg.solver, execution_from_env());
  const double alpha = invert_query(curve, {cfg.metric, {lower, upper}});
  const Interval cut = curve.interval_at(alpha);
  const NumberFormat f = common.format();
  out << "alpha: " << (common.full_precision ? format_number(alpha, f) : fmt::format("{:.2f}", alpha))
      << '\n';
  out << "cut: [" << format_number(cut.lo, f) << ", " << format_number(cut.hi, f) << "]\n";
  return kOk;
}

int cmd_simulate(const Common& common, std::optional<std::uint64_t> reps,
                 std::optional<std::uint64_t> runs, std::optional<double> horizon,
                 std::optional<std::uint64_t> seed, const std::optional<std::string>& path,
                 std::ostream& out) {
  const ModelConfig cfg = common.load();
  SimConfig sim = cfg.simulation;
  if (reps) sim.replications = *reps;
  if (seed) sim.seed = *seed;
  if (horizon) sim.horizon = *horizon;
  const Execution exec = execution_from_env();
  const NumberFormat f = common.format();

  Sink sink(path, out);
  std::ostream& csv = sink.stream();
  csv << "quantity,mean,std_error,replications,analytic\n";
  const SimEstimate m = simulate_mttf(sim, exec);
  csv << "mttf," << format_number(m.mean, f) << ',' << format_number(m.std_error, f) << ','
      << m.replications << ',' << format_number(mttf(sim.params), f) << '\n';
  if (sim.params.mu > 0.0) {
    SimConfig avail = sim;
    avail.replications = runs.value_or(4);
    const SimEstimate a = simulate_availability(avail, exec);
    csv << "availability," << format_number(a.mean, f) << ',' << format_number(a.std_error, f)
        << ',' << a.replications << ',' << format_number(steady_availability(sim.params), f) << '\n';
  }
  sink.close(path);
  return kOk;
}

int cmd_calibrate(const Common& common, double anchor_alpha, double lo, double hi, std::ostream& out) {
  const ModelConfig cfg = common.load();
  const CalibrationResult r = calibrate_coverage(cfg.params, cfg.metric, anchor_alpha, {lo, hi}, cfg.solver);
  const NumberFormat f = common.format();
  out << "c*: " << (common.full_precision ? format_number(r.c, f) : fmt::format("{:.6f}", r.c)) << '\n';
  out << "anchor residual: lo=" << fmt::format("{:.3e}", r.lower_residual)
      << " hi=" << fmt::format("{:.3e}", r.upper_residual) << '\n';

  if (!cfg.reference.empty()) {
    FuzzySystemParams fitted = cfg.params;
    fitted.c = r.c;
    std::vector<double> alphas;
    for (const ReferenceRow& row : cfg.reference) alphas.push_back(row.alpha);
    const std::vector<BoundsResult> rows =
        bounds_per_alpha(fitted, cfg.metric, alphas, cfg.solver, execution_from_env());
    double worst = 0.0;
    out << "alpha,T_L,T_U,ref_L,ref_U,res_L,res_U\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Interval& got = rows[i].bounds;
      const Interval& ref = cfg.reference[i].bounds;
      worst = std::max({worst, std::abs(got.lo - ref.lo), std::abs(got.hi - ref.hi)});
      out << fmt::format("{:.2f}", rows[i].alpha) << ',' << format_number(got.lo, f) << ','
          << format_number(got.hi, f) << ',' << format_number(ref.lo, f) << ','
          << format_number(ref.hi, f) << ',' << fmt::format("{:.3e}", got.lo - ref.lo) << ','
          << fmt::format("{:.3e}", got.hi - ref.hi) << '\n';
    }
    out << "max |residual|: " << fmt::format("{:.3e}", worst) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy reliability analysis of a repairable standby system"};
  app.require_subcommand(1);

  Common common;
  std::optional<int> levels;
  std::optional<std::string> out_path;
  std::string curve_path;
  double lower = 0.0, upper = 0.0;
  std::optional<std::uint64_t> reps, runs, seed;
  std::optional<double> horizon;
  double anchor_alpha = 1.0, anchor_lo = 0.0, anchor_hi = 0.0;

  CLI::App* metrics = app.add_subcommand("metrics", "Crisp metrics at the modal parameter values");
  common.attach(metrics);

  CLI::App* alphacut = app.add_subcommand("alphacut", "Alpha-cut table as CSV");
  common.attach(alphacut);
  alphacut->add_option("--levels", levels, "Evenly spaced alpha levels from 0 to 1")
      ->check(CLI::Range(2, 100000));
  alphacut->add_option("--out", out_path, "Output CSV (default stdout)");

  CLI::App* curve = app.add_subcommand("curve", "Membership-curve plot data");
  common.attach(curve);
  curve->add_option("--levels", levels, "Evenly spaced alpha levels from 0 to 1")
      ->check(CLI::Range(2, 100000));
  curve->add_option("--out", curve_path, "alpha,lower,upper CSV; z,membership goes to <stem>_membership.csv")
      ->required();

  CLI::App* invert = app.add_subcommand("invert", "Alpha level whose cut fits a target band");
  common.attach(invert);
  invert->add_option("--lower", lower, "Target lower bound")->required();
  invert->add_option("--upper", upper, "Target upper bound")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo cross-check as CSV");
  common.attach(simulate);
  simulate->add_option("--reps", reps, "MTTF replications");
  simulate->add_option("--runs", runs, "Independent availability runs (default 4)");
  simulate->add_option("--horizon", horizon, "Availability run length");
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--out", out_path, "Output CSV (default stdout)");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Fit the coverage factor to an anchor row");
  common.attach(calibrate);
  calibrate->add_option("--anchor-alpha", anchor_alpha, "Alpha level of the anchor row");
  calibrate->add_option("--lo", anchor_lo, "Anchor lower bound")->required();
  calibrate->add_option("--hi", anchor_hi, "Anchor upper bound")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (metrics->parsed()) return cmd_metrics(common, out);
    if (alphacut->parsed()) return cmd_alphacut(common, levels, out_path, out);
    if (curve->parsed()) return cmd_curve(common, levels, curve_path, out);
    if (invert->parsed()) {
      if (upper < lower) throw ValidationError("--upper must be >= --lower");
      return cmd_invert(common, lower, upper, out);
    }
    if (simulate->parsed()) return cmd_simulate(common, reps, runs, horizon, seed, out_path, out);
    if (calibrate->parsed()) return cmd_calibrate(common, anchor_alpha, anchor_lo, anchor_hi, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const NoContainmentError& e) {
    err << "containment error: " << e.what() << '\n';
    return kSolver;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace fuzzrel::cli
