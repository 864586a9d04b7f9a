#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace fs = std::filesystem;
using fuzzrel::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("fuzzrel_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kPlant = std::string(FUZZREL_SOURCE_DIR) + "/configs/power_plant.json";

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("metrics on crisp configs") {
  const std::string repairable = write_config("repairable.json", R"({"lambda": 1, "theta": 0, "mu": 2, "c": 1})");
  Result r = invoke({"metrics", "--config", repairable});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nMTTF: 4.5000\n") != std::string::npos);
  CHECK(r.out.find("\nt,R(t)\n0.0000,1.0000\n") != std::string::npos);

  const std::string uncovered = write_config("uncovered.json", R"({"lambda": 1, "theta": 0.5, "mu": 3, "c": 0})");
  r = invoke({"metrics", "--config", uncovered});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nMTTF: 0.4000\n") != std::string::npos);

  r = invoke({"metrics", "--config", uncovered, "--full-precision"});
  CHECK(r.out.find("\nMTTF: 0.40000000000000002\n") != std::string::npos);
}

TEST_CASE("error exit codes") {
  const std::string malformed = write_config("malformed.json", R"({"lambda": "abc", "theta": 0, "mu": 2})");
  Result r = invoke({"metrics", "--config", malformed});
  CHECK(r.code == fuzzrel::cli::kParse);
  CHECK(r.err.find("/lambda") != std::string::npos);

  const std::string invalid = write_config("invalid.json", R"({"lambda": 1, "theta": 0, "mu": 2, "c": 1.5})");
  CHECK(invoke({"metrics", "--config", invalid}).code == fuzzrel::cli::kValidation);

  CHECK(invoke({"metrics", "--config", (scratch() / "missing.json").string()}).code == fuzzrel::cli::kIo);
  CHECK(invoke({}).code == fuzzrel::cli::kUsage);
  CHECK(invoke({"metrics"}).code == fuzzrel::cli::kUsage);
  CHECK(invoke({"metrics", "--config", kPlant, "--bogus"}).code == fuzzrel::cli::kUsage);
  CHECK(invoke({"alphacut", "--config", kPlant, "--levels", "1"}).code == fuzzrel::cli::kUsage);
  CHECK(invoke({"alphacut", "--config", kPlant, "--metric", "reliability"}).code == fuzzrel::cli::kParse);
  CHECK(invoke({"alphacut", "--config", kPlant, "--out", "/nonexistent/dir/t.csv"}).code ==
        fuzzrel::cli::kIo);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("alpha-cut table") {
  const std::string crisp = write_config("crisp.json", R"({"lambda": 1, "theta": 0, "mu": 2, "c": 1})");
  Result r = invoke({"alphacut", "--config", crisp, "--levels", "2"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "alpha,x_L,x_U,v_L,v_U,y_L,y_U,T_L,T_U");
  CHECK(rows[1] == "0.00,1.0000,1.0000,0.0000,0.0000,2.0000,2.0000,4.5000,4.5000");
  CHECK(rows[2] == "1.00,1.0000,1.0000,0.0000,0.0000,2.0000,2.0000,4.5000,4.5000");

  r = invoke({"alphacut", "--config", kPlant});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 12);
  CHECK(invoke({"alphacut", "--config", kPlant}).out == r.out);

  const fs::path file = scratch() / "table.csv";
  CHECK(invoke({"alphacut", "--config", kPlant, "--out", file.string()}).code == 0);
  CHECK(slurp(file) == r.out);

  r = invoke({"alphacut", "--config", kPlant, "--metric", "availability", "--levels", "3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[0] == "alpha,x_L,x_U,v_L,v_U,y_L,y_U,w_L,w_U,T_L,T_U");
}

TEST_CASE("thread count does not change the output") {
  ::setenv("FUZZREL_THREADS", "1", 1);
  const std::string one = invoke({"alphacut", "--config", kPlant, "--full-precision"}).out;
  ::setenv("FUZZREL_THREADS", "3", 1);
  const std::string three = invoke({"alphacut", "--config", kPlant, "--full-precision"}).out;
  ::unsetenv("FUZZREL_THREADS");
  CHECK(one == three);
}

TEST_CASE("membership curve files") {
  const fs::path out = scratch() / "mtbf.csv";
  const Result r = invoke({"curve", "--config", kPlant, "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "alpha,lower,upper");

  const auto samples = lines(slurp(scratch() / "mtbf_membership.csv"));
  REQUIRE(samples.size() == 202);
  CHECK(samples[0] == "z,membership");
  CHECK(samples[1].substr(samples[1].find(',')) == ",0.0000");
  CHECK(samples.back().substr(samples.back().find(',')) == ",0.0000");
  double peak = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    peak = std::max(peak, std::stod(samples[k].substr(samples[k].find(',') + 1)));
  }
  CHECK(peak == 1.0);
}

TEST_CASE("inverse query") {
  Result r = invoke({"invert", "--config", kPlant, "--lower", "4.939", "--upper", "6.716"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("alpha: 0.9", 0) == 0);

  CHECK(invoke({"invert", "--config", kPlant, "--lower", "5.5", "--upper", "6"}).code ==
        fuzzrel::cli::kSolver);
  CHECK(invoke({"invert", "--config", kPlant, "--lower", "6", "--upper", "5"}).code ==
        fuzzrel::cli::kValidation);
}

TEST_CASE("calibration report") {
  const Result r = invoke({"calibrate", "--config", kPlant, "--lo", "5.0669", "--hi", "6.5424"});
  REQUIRE(r.code == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 15);
  CHECK(out[0].rfind("c*: 0.900", 0) == 0);
  CHECK(out[2] == "alpha,T_L,T_U,ref_L,ref_U,res_L,res_U");
  const std::string worst = out.back();
  REQUIRE(worst.rfind("max |residual|: ", 0) == 0);
  CHECK(std::stod(worst.substr(16)) < 5e-3);
}

TEST_CASE("simulation csv") {
  const std::string small = write_config("small.json", R"({
    "lambda": 0.6, "theta": 0.2, "mu": 4, "c": 0.9, "beta": 2,
    "simulation": {"replications": 2000, "horizon": 2000, "seed": 3}
  })");
  const Result a = invoke({"simulate", "--config", small});
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "quantity,mean,std_error,replications,analytic");
  CHECK(rows[1].rfind("mttf,", 0) == 0);
  CHECK(rows[1].find(",2000,") != std::string::npos);
  CHECK(rows[2].rfind("availability,", 0) == 0);
  CHECK(invoke({"simulate", "--config", small}).out == a.out);
  CHECK(invoke({"simulate", "--config", small, "--seed", "4"}).out != a.out);
}
