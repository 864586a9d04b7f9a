#include "fuzzrel/config.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fuzzrel/errors.hpp"

namespace fuzzrel {
namespace {

using nlohmann::json;

[[noreturn]] void bad(std::string_view field, std::string_view what) {
  throw ParseError(fmt::format("{}: {}", field, what));
}

double number(const json& node, const std::string& field) {
  if (!node.is_number()) bad(field, fmt::format("expected a number, got {}", node.dump()));
  return node.get<double>();
}

std::uint64_t count(const json& node, const std::string& field) {
  if (!node.is_number_integer() || node.get<std::int64_t>() < 0) {
    bad(field, fmt::format("expected a nonnegative integer, got {}", node.dump()));
  }
  return node.get<std::uint64_t>();
}

std::vector<double> numbers(const json& node, const std::string& field) {
  if (!node.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], fmt::format("{}/{}", field, i)));
  return out;
}

// Validation failures inside a field are reported against that field.
template <typename F>
auto within(std::string_view field, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", field, e.what()));
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", field, e.what()));
  }
}

void check_keys(const json& obj, std::string_view field, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad(fmt::format("{}/{}", field, key), "unknown key");
    }
  }
}

}  // namespace

FuzzyNumber parse_fuzzy_number(const json& node, std::string_view field) {
  const std::string f(field);
  if (node.is_number()) return within(field, [&] { return FuzzyNumber::crisp(node.get<double>()); });
  if (node.is_array()) {
    const std::vector<double> v = numbers(node, f);
    if (v.size() == 3) return within(field, [&] { return FuzzyNumber::triangular(v[0], v[1], v[2]); });
    if (v.size() == 4) return within(field, [&] { return FuzzyNumber::trapezoidal(v[0], v[1], v[2], v[3]); });
    bad(field, fmt::format("expected 3 (triangular) or 4 (trapezoidal) values, got {}", v.size()));
  }
  if (node.is_object()) {
    check_keys(node, field, {"breakpoints"});
    if (!node.contains("breakpoints")) bad(field, "object form needs a \"breakpoints\" array");
    const json& pts = node["breakpoints"];
    if (!pts.is_array()) bad(f + "/breakpoints", "expected an array of [x, membership] pairs");
    std::vector<Breakpoint> bp;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string at = fmt::format("{}/breakpoints/{}", f, i);
      const std::vector<double> pair = numbers(pts[i], at);
      if (pair.size() != 2) bad(at, "expected [x, membership]");
      bp.push_back({pair[0], pair[1]});
    }
    return within(field, [&] { return FuzzyNumber(std::move(bp)); });
  }
  bad(field, "expected a number, a 3- or 4-element array, or {\"breakpoints\": ...}");
}

Metric parse_metric(std::string_view name, std::optional<double> t) {
  if (name == "mtbf" || name == "mttf") return Metric::mtbf();
  if (name == "availability") return Metric::availability();
  if (name == "reliability") {
    if (!t) throw ParseError("metric reliability needs a time t");
    return Metric::reliability_at(*t);
  }
  throw ParseError(fmt::format("unknown metric '{}' (expected mtbf, availability or reliability)", name));
}

ModelConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("/", "expected a JSON object");
  check_keys(doc, "", {"lambda", "theta", "mu", "beta", "c", "metric", "alphas", "solver",
                       "simulation", "report_times", "reference"});
  ModelConfig cfg;

  for (const char* key : {"lambda", "theta", "mu"}) {
    if (!doc.contains(key)) bad(fmt::format("/{}", key), "required field missing");
  }
  cfg.params.lambda = parse_fuzzy_number(doc["lambda"], "/lambda");
  cfg.params.theta = parse_fuzzy_number(doc["theta"], "/theta");
  cfg.params.mu = parse_fuzzy_number(doc["mu"], "/mu");
  if (doc.contains("beta")) cfg.params.beta = parse_fuzzy_number(doc["beta"], "/beta");
  if (doc.contains("c")) cfg.params.c = number(doc["c"], "/c");

  if (doc.contains("metric")) {
    const json& m = doc["metric"];
    if (m.is_string()) {
      cfg.metric = within("/metric", [&] { return parse_metric(m.get<std::string>(), std::nullopt); });
    } else if (m.is_object()) {
      check_keys(m, "/metric", {"name", "t"});
      if (!m.contains("name") || !m["name"].is_string()) bad("/metric/name", "expected a string");
      std::optional<double> t;
      if (m.contains("t")) t = number(m["t"], "/metric/t");
      cfg.metric = within("/metric", [&] { return parse_metric(m["name"].get<std::string>(), t); });
    } else {
      bad("/metric", "expected a string or {\"name\": ..., \"t\": ...}");
    }
  }

  if (doc.contains("alphas")) {
    const json& a = doc["alphas"];
    if (a.is_number_integer()) {
      cfg.alphas = within("/alphas", [&] { return alpha_levels(a.get<int>()); });
    } else {
      cfg.alphas = numbers(a, "/alphas");
      for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        if (!(cfg.alphas[i] >= 0.0 && cfg.alphas[i] <= 1.0) ||
            (i > 0 && !(cfg.alphas[i] > cfg.alphas[i - 1]))) {
          throw ValidationError(fmt::format("/alphas/{}: alphas must be strictly increasing in [0, 1]", i));
        }
      }
      if (cfg.alphas.empty() || cfg.alphas.front() != 0.0 || cfg.alphas.back() != 1.0) {
        throw ValidationError("/alphas: levels must start at 0 and end at 1");
      }
    }
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) bad("/solver", "expected an object");
    check_keys(s, "/solver", {"seed", "interior_starts", "tolerance", "max_evaluations", "theta_coupling"});
    if (s.contains("seed")) cfg.solver.seed = count(s["seed"], "/solver/seed");
    if (s.contains("interior_starts")) {
      cfg.solver.interior_starts = static_cast<int>(count(s["interior_starts"], "/solver/interior_starts"));
    }
    if (s.contains("tolerance")) cfg.solver.tolerance = number(s["tolerance"], "/solver/tolerance");
    if (s.contains("max_evaluations")) {
      cfg.solver.max_evaluations = static_cast<int>(count(s["max_evaluations"], "/solver/max_evaluations"));
    }
    if (s.contains("theta_coupling")) {
      const json& tc = s["theta_coupling"];
      if (tc == "independent") cfg.params.coupling = ThetaCoupling::Independent;
      else if (tc == "joint") cfg.params.coupling = ThetaCoupling::Joint;
      else bad("/solver/theta_coupling", "expected \"independent\" or \"joint\"");
    }
  }

  if (doc.contains("simulation")) {
    const json& s = doc["simulation"];
    if (!s.is_object()) bad("/simulation", "expected an object");
    check_keys(s, "/simulation", {"replications", "horizon", "seed", "batches", "warmup_fraction"});
    if (s.contains("replications")) cfg.simulation.replications = count(s["replications"], "/simulation/replications");
    if (s.contains("horizon")) cfg.simulation.horizon = number(s["horizon"], "/simulation/horizon");
    if (s.contains("seed")) cfg.simulation.seed = count(s["seed"], "/simulation/seed");
    if (s.contains("batches")) cfg.simulation.batches = static_cast<int>(count(s["batches"], "/simulation/batches"));
    if (s.contains("warmup_fraction")) {
      cfg.simulation.warmup_fraction = number(s["warmup_fraction"], "/simulation/warmup_fraction");
    }
  }

  if (doc.contains("report_times")) {
    cfg.report_times = numbers(doc["report_times"], "/report_times");
    for (std::size_t i = 0; i < cfg.report_times.size(); ++i) {
      if (!(cfg.report_times[i] >= 0.0)) {
        throw ValidationError(fmt::format("/report_times/{}: time must be >= 0", i));
      }
    }
  }

  if (doc.contains("reference")) {
    const json& r = doc["reference"];
    if (!r.is_array()) bad("/reference", "expected an array of [alpha, lo, hi] rows");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string at = fmt::format("/reference/{}", i);
      const std::vector<double> row = numbers(r[i], at);
      if (row.size() != 3) bad(at, "expected [alpha, lo, hi]");
      cfg.reference.push_back({row[0], {row[1], row[2]}});
    }
  }

  within("/", [&] {
    cfg.params.validate();
    return 0;
  });
  cfg.simulation.params = cfg.params.modal();
  return cfg;
}

ModelConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()));
  }
  return parse_config(doc);
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_text(text.str());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace fuzzrel
