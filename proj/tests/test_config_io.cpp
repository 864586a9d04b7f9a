#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>
#include <string>

#include "fuzzrel/config.hpp"
#include "fuzzrel/errors.hpp"
#include "fuzzrel/table_io.hpp"

using namespace fuzzrel;

namespace {

template <typename E>
std::string message_of(std::string_view text) {
  try {
    parse_config_text(text);
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

const char* kPlant = R"({
  "lambda": [0.5, 0.6, 0.7, 0.8],
  "theta": [0.1, 0.2, 0.3, 0.4],
  "mu": [3, 4, 5, 6],
  "c": 0.9
})";

}  // namespace

TEST_CASE("minimal config takes the defaults") {
  const ModelConfig cfg = parse_config_text(kPlant);
  CHECK(cfg.metric == Metric::mtbf());
  CHECK(cfg.alphas.size() == 11);
  CHECK(cfg.params.c == 0.9);
  CHECK(cfg.params.beta.is_crisp());
  CHECK(cfg.params.lambda.alpha_cut(0.5) == Interval{0.55, 0.75});
  CHECK(cfg.simulation.params.lambda == doctest::Approx(0.65));
  CHECK(cfg.simulation.params.mu == doctest::Approx(4.5));
  CHECK(cfg.reference.empty());
}

TEST_CASE("every fuzzy-number form parses") {
  const ModelConfig cfg = parse_config_text(R"({
    "lambda": 1.0,
    "theta": [0.1, 0.2, 0.3],
    "mu": {"breakpoints": [[1, 0], [2, 1], [4, 1], [5, 0]]},
    "beta": [1, 2, 3, 4],
    "metric": {"name": "reliability", "t": 2.5},
    "alphas": [0, 0.25, 1],
    "solver": {"seed": 7, "interior_starts": 3, "theta_coupling": "joint"},
    "simulation": {"replications": 50, "horizon": 10, "seed": 3, "batches": 5},
    "report_times": [0, 1],
    "reference": [[1.0, 2.0, 3.0]]
  })");
  CHECK(cfg.params.lambda.is_crisp());
  CHECK(cfg.params.theta.alpha_cut(1.0) == Interval::point(0.2));
  CHECK(cfg.params.mu.alpha_cut(0.5) == Interval{1.5, 4.5});
  CHECK(cfg.params.beta.core() == Interval{2, 3});
  CHECK(cfg.metric == Metric::reliability_at(2.5));
  CHECK(cfg.alphas == std::vector<double>{0, 0.25, 1});
  CHECK(cfg.solver.seed == 7);
  CHECK(cfg.solver.interior_starts == 3);
  CHECK(cfg.params.coupling == ThetaCoupling::Joint);
  CHECK(cfg.simulation.replications == 50);
  CHECK(cfg.simulation.batches == 5);
  REQUIRE(cfg.reference.size() == 1);
  CHECK(cfg.reference[0].bounds == Interval{2.0, 3.0});
}

TEST_CASE("errors name the offending field") {
  CHECK(message_of<ParseError>(R"({"lambda": "fast", "theta": 0, "mu": 1})").find("/lambda") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": [1, "x", 3], "theta": 0, "mu": 1})").find("/lambda/1") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0})").find("/mu") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0, "mu": 1, "cc": 1})").find("/cc") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0, "mu": 1, "c": "high"})").find("/c") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0, "mu": [1, 2]})").find("/mu") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0, "mu": 1, "metric": "speed"})").find("/metric") ==
        0);
  CHECK(message_of<ParseError>(R"({"lambda": 1, "theta": 0, "mu": 1, "simulation": {"seed": -4}})")
            .find("/simulation/seed") == 0);
  CHECK(message_of<ParseError>(R"({"lambda": 1,)").find("malformed JSON") == 0);

  CHECK(message_of<ValidationError>(R"({"lambda": [3, 2, 1], "theta": 0, "mu": 1})").find("/lambda") == 0);
  CHECK(message_of<ValidationError>(R"({"lambda": 1, "theta": 0, "mu": 1, "alphas": [0, 0.5, 0.4]})")
            .find("/alphas/2") == 0);
  CHECK(message_of<ValidationError>(R"({"lambda": 1, "theta": 0, "mu": 1, "alphas": [0.2, 1]})")
            .find("/alphas") == 0);
  CHECK(message_of<ValidationError>(R"({"lambda": 1, "theta": 0, "mu": 1, "c": 2})").find("c") !=
        std::string::npos);
}

TEST_CASE("config files") {
  CHECK_THROWS_AS(load_config("/nonexistent/model.json"), IoError);
  const ModelConfig cfg = load_config(std::filesystem::path(FUZZREL_SOURCE_DIR) / "configs/power_plant.json");
  CHECK(cfg.reference.size() == 11);
  CHECK(cfg.params.mu.alpha_cut(0.0) == Interval{3, 6});
}

TEST_CASE("number formatting") {
  CHECK(format_number(4.5, NumberFormat::Fixed4) == "4.5000");
  CHECK(format_number(0.1, NumberFormat::Full) == "0.10000000000000001");
  CHECK(format_number(-0.00001, NumberFormat::Fixed4) == "0.0000");
}

TEST_CASE("table csv round trip") {
  FuzzySystemParams fp;
  fp.lambda = FuzzyNumber::trapezoidal(0.5, 0.6, 0.7, 0.8);
  fp.theta = FuzzyNumber::trapezoidal(0.1, 0.2, 0.3, 0.4);
  fp.mu = FuzzyNumber::trapezoidal(3, 4, 5, 6);
  fp.beta = FuzzyNumber::triangular(1, 2, 3);
  fp.c = 0.9;

  for (const Metric& metric : {Metric::mtbf(), Metric::availability()}) {
    const AlphaCutTable table = build_table(fp, metric, alpha_levels(6));
    std::ostringstream full;
    write_table_csv(full, table, NumberFormat::Full);
    std::istringstream in(full.str());
    const AlphaCutTable back = read_table_csv(in, metric);
    CHECK(back.has_beta == table.has_beta);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      CHECK(back.rows[k].alpha == table.rows[k].alpha);
      CHECK(back.rows[k].characteristic == table.rows[k].characteristic);
      for (std::size_t j = 0; j < (table.has_beta ? 4u : 3u); ++j) CHECK(back.rows[k].cuts[j] == table.rows[k].cuts[j]);
    }
    std::ostringstream again;
    write_table_csv(again, back, NumberFormat::Full);
    CHECK(again.str() == full.str());
  }

  const AlphaCutTable mtbf = build_table(fp, Metric::mtbf(), alpha_levels(11));
  std::ostringstream fixed;
  write_table_csv(fixed, mtbf);
  const std::string text = fixed.str();
  CHECK(text.rfind("alpha,x_L,x_U,v_L,v_U,y_L,y_U,T_L,T_U\n", 0) == 0);
  CHECK(text.find("\n0.90,0.5900,0.7100,0.1900,0.3100,3.9000,5.1000,") != std::string::npos);
}

TEST_CASE("malformed table csv") {
  std::istringstream header("alpha,lo,hi\n0,1,2\n");
  CHECK_THROWS_AS(read_table_csv(header), ParseError);
  std::istringstream cell("alpha,x_L,x_U,v_L,v_U,y_L,y_U,T_L,T_U\n0,1,2,3,4,5,6,7,oops\n");
  CHECK_THROWS_AS(read_table_csv(cell), ParseError);
  std::istringstream width("alpha,x_L,x_U,v_L,v_U,y_L,y_U,T_L,T_U\n0,1,2\n");
  CHECK_THROWS_AS(read_table_csv(width), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_table_csv(empty), ParseError);
}

TEST_CASE("curve and membership samples") {
  const MembershipCurve curve({{0.0, {1.0, 5.0}}, {1.0, {2.0, 3.0}}});
  std::ostringstream c;
  write_curve_csv(c, curve);
  CHECK(c.str() == "alpha,lower,upper\n0.00,1.0000,5.0000\n1.00,2.0000,3.0000\n");
  std::ostringstream m;
  write_membership_samples_csv(m, curve, 5);
  CHECK(m.str() == "z,membership\n1.0000,0.0000\n2.0000,1.0000\n3.0000,1.0000\n4.0000,0.5000\n5.0000,0.0000\n");
}
