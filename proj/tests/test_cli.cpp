#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "sfhp/cli/commands.hpp"
#include "sfhp/cli/run_spec.hpp"
#include "sfhp/errors.hpp"
#include "sfhp/io.hpp"

using namespace sfhp;
using namespace sfhp::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = SFHP_CONFIG_DIR;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("sfhp_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path file = dir / name;
  std::ofstream(file) << text;
  return file;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const fs::path& file) {
  std::ifstream in(file);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::string field_of(const std::string& json_text) {
  try {
    parse_run_spec(json_text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

const char* kMinimal = R"({"system": {"name": "natural"}, "h": 0.01, "N": 10, "q0": [0.1], "p0": [0.0]})";

}  // namespace

TEST_CASE("config parsing") {
  const RunSpec spec = parse_run_spec(kMinimal);
  CHECK(spec.system.name == "natural");
  CHECK(spec.sim.N == 10);
  CHECK(spec.sim.formulation == Formulation::hp_classical);

  const RunSpec sam = load_run_spec(kConfigs / "samuelson.json");
  CHECK(sam.system.rho == 0.003);
  CHECK(sam.system.a == 0.03);
  CHECK(sam.sim.h == 0.001);
  CHECK(sam.sim.N == 10000);

  const RunSpec pend = load_run_spec(kConfigs / "pendulum_fractional.json");
  REQUIRE(pend.sim.weight.has_value());
  CHECK(pend.sim.weight->profile.alpha0 == 0.6);
  CHECK(pend.sim.weight->t_obs == 0.8);
}

TEST_CASE("validation failures name the offending field") {
  CHECK(field_of(R"({"system": {"name": "natural"}, "h": 0.01, "N": 0, "q0": [0.1], "p0": [0.0]})") == "N");
  CHECK(field_of(R"({"system": {"name": "nope"}, "h": 0.01, "N": 5, "q0": [0.1], "p0": [0.0]})") == "system.name");
  CHECK(field_of(R"({"system": {"name": "natural"}, "h": 0.01, "N": 5, "q0": [0.1], "p0": [0.0], "colour": 1})") == "colour");
  CHECK(field_of(R"({"system": {"name": "natural"}, "N": 5, "q0": [0.1], "p0": [0.0]})") == "h");
  CHECK(field_of(R"({"system": {"name": "natural"}, "h": 0.01, "N": 5, "q0": [0.1]})") == "v0/p0");
  CHECK(field_of(R"({"system": {"name": "natural"}, "formulation": "hp-fractional", "h": 0.01, "N": 5,
                     "q0": [0.1], "p0": [0.0], "weight": {"alpha": {"alpha0": 1.4}, "t_obs": 2.0}})") == "weight.alpha");
  CHECK(field_of(R"({"system": {"name": "natural"}, "formulation": "hp-fractional", "h": 0.01, "N": 100,
                     "q0": [0.1], "p0": [0.0], "weight": {"alpha": {"alpha0": 0.6}, "t_obs": 0.5}})") == "weight.t_obs");
  CHECK(field_of(R"({"system": {"name": "samuelson", "a": 1.5}, "h": 0.01, "N": 5, "q0": [0.1], "p0": [0.0]})") == "system.a");
  CHECK(field_of(R"({"system": {"name": "natural"}, "h": 0.01, "N": 5, "q0": [0.1], "p0": [0.0],
                     "friction_sign": "sideways"})") == "friction_sign");
  CHECK(field_of("{not json") != "");
}

TEST_CASE("trajectory CSV round trip is bit-identical") {
  TempDir dir("csv");
  const RunSpec spec = load_run_spec(kConfigs / "pendulum_fractional.json");
  SimConfig c = spec.sim;
  c.system = build_system(spec.system);
  const Trajectory t = euler_maruyama(c, wiener_path(c.seed, c.h, c.N));
  write_trajectory_csv(dir.path / "t.csv", t);
  const Trajectory back = read_trajectory_csv(dir.path / "t.csv");
  CHECK(back.times == t.times);
  CHECK(back.q == t.q);
  CHECK(back.v == t.v);
  CHECK(back.p == t.p);
  CHECK(back.dW == t.dW);
  std::ifstream in(dir.path / "t.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,s,dW,q_0,v_0,p_0");
}

TEST_CASE("simulate writes the CSV and six plots") {
  TempDir dir("simulate");
  std::ostringstream out, err;
  CommandOptions opts{kConfigs / "samuelson.json", dir.path, std::nullopt, false};
  REQUIRE(cmd_simulate(opts, out, err) == kSuccess);
  CHECK(count_lines(dir.path / "trajectory.csv") == 10001 + 1);
  int svgs = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) svgs += e.path().extension() == ".svg";
  CHECK(svgs == 6);
  CHECK(slurp(dir.path / "sample_q_p.svg").find("<svg") != std::string::npos);

  TempDir bare("simulate_noplots");
  CommandOptions no_plots{kConfigs / "samuelson.json", bare.path, std::nullopt, true};
  REQUIRE(cmd_simulate(no_plots, out, err) == kSuccess);
  CHECK(slurp(bare.path / "trajectory.csv") == slurp(dir.path / "trajectory.csv"));
  CHECK_FALSE(fs::exists(bare.path / "sample_q_p.svg"));

  TempDir other("simulate_seed");
  CommandOptions seeded{kConfigs / "samuelson.json", other.path, 99, true};
  REQUIRE(cmd_simulate(seeded, out, err) == kSuccess);
  CHECK(slurp(other.path / "trajectory.csv") != slurp(dir.path / "trajectory.csv"));
  CHECK(slurp(other.path / "trajectory_deterministic.csv") == slurp(dir.path / "trajectory_deterministic.csv"));
}

TEST_CASE("exit codes") {
  TempDir dir("exit");
  std::ostringstream out, err;
  const auto zero_n = write_file(dir.path, "zero.json",
      R"({"system": {"name": "natural"}, "h": 0.01, "N": 0, "q0": [0.1], "p0": [0.0]})");
  CHECK(cmd_simulate({zero_n, dir.path, std::nullopt, true}, out, err) == kConfigError);
  CHECK(err.str().find("N") != std::string::npos);
  CHECK(cmd_simulate({dir.path / "missing.json", dir.path, std::nullopt, true}, out, err) == kConfigError);

  // a huge step on a stiff quadratic potential overflows
  const auto blowup = write_file(dir.path, "blowup.json",
      R"({"system": {"name": "natural", "potential": "quadratic", "stiffness": 1e6, "noise": "zero"},
          "h": 1.0, "N": 200, "q0": [1.0], "p0": [0.0]})");
  CHECK(cmd_simulate({blowup, dir.path, std::nullopt, true}, out, err) == kNumericAbort);

  const auto hard = write_file(dir.path, "hard.json",
      R"({"integral": {"alpha": {"alpha0": 0.5}, "t": 1.0, "f": "sin", "rel_tol": 1e-30}})");
  CHECK(cmd_integral({hard, std::nullopt, std::nullopt, true}, out, err) == kQuadratureFailure);
}

TEST_CASE("integral prints value and error estimate") {
  std::ostringstream out, err;
  REQUIRE(cmd_integral({kConfigs / "integral.json", std::nullopt, std::nullopt, true}, out, err) == kSuccess);
  CHECK(out.str().find("value 1.11917495") != std::string::npos);
  CHECK(out.str().find("error_estimate") != std::string::npos);
}

TEST_CASE("ensemble writes per-path CSVs and a summary") {
  TempDir dir("ensemble");
  const auto cfg = write_file(dir.path, "ens.json",
      R"({"system": {"name": "natural"}, "h": 0.01, "N": 20, "seed": 3, "q0": [0.1], "p0": [0.0],
          "ensemble": {"size": 5}})");
  std::ostringstream out, err;
  REQUIRE(cmd_ensemble({cfg, dir.path / "o", std::nullopt, true}, out, err) == kSuccess);
  CHECK(fs::exists(dir.path / "o" / "paths" / "path_00004.csv"));
  CHECK(count_lines(dir.path / "o" / "summary.csv") == 22);
  const std::string first = slurp(dir.path / "o" / "summary.csv");
  REQUIRE(cmd_ensemble({cfg, dir.path / "o2", std::nullopt, true}, out, err) == kSuccess);
  CHECK(slurp(dir.path / "o2" / "summary.csv") == first);
}

TEST_CASE("convergence and action-check commands") {
  TempDir dir("studies");
  std::ostringstream out, err;
  const auto conv = write_file(dir.path, "conv.json",
      R"({"system": {"name": "natural", "noise_scale": 0.0}, "h": 0.0625, "N": 16, "q0": [0.5], "p0": [0.0],
          "convergence": {"ladder": [0.0625, 0.03125, 0.015625], "reference_h": 0.0009765625, "seeds": 2,
                          "T": 1.0, "order_band": [0.8, 1.2]}})");
  CHECK(cmd_convergence({conv, dir.path / "c", std::nullopt, true}, out, err) == kSuccess);
  CHECK(count_lines(dir.path / "c" / "convergence.csv") == 4);

  const auto wrong_band = write_file(dir.path, "band.json",
      R"({"system": {"name": "natural", "noise_scale": 0.0}, "h": 0.0625, "N": 16, "q0": [0.5], "p0": [0.0],
          "convergence": {"ladder": [0.0625, 0.03125], "reference_h": 0.0009765625, "seeds": 1,
                          "T": 1.0, "order_band": [0.35, 0.65]}})");
  CHECK(cmd_convergence({wrong_band, dir.path / "c2", std::nullopt, true}, out, err) == kCheckFailed);

  CHECK(cmd_action_check({kConfigs / "pendulum_action_check.json", dir.path / "a", std::nullopt, true}, out, err) ==
        kSuccess);
  CHECK(slurp(dir.path / "a" / "action_check.json").find("\"pass\": true") != std::string::npos);

  const auto flipped = write_file(dir.path, "flip.json",
      R"({"system": {"name": "natural"}, "h": 0.01, "N": 100, "q0": [0.5], "p0": [0.0],
          "action_check": {"flip_drift": true}})");
  CHECK(cmd_action_check({flipped, dir.path / "f", std::nullopt, true}, out, err) == kCheckFailed);
}
