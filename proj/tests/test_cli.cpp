#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelife/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wavelife");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = wavelife::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / "wavelife_cli_test";
  fs::create_directories(d);
  return d;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("theory prints the combined exponent") {
  const auto spec = write("combined.json", R"({"force": [{"a": 2, "b": 1}, {"a": 4}], "data": {"g": "bump_derivative"}})");
  const auto r = run({"theory", spec.string()});
  CHECK(r.code == 0);
  CHECK(has(r.out, "9/5"));
  CHECK(has(r.out, "CombinedImproved"));
  CHECK(has(r.out, "improvement margin: 3/10"));
}

TEST_CASE("verify passes") {
  const auto r = run({"verify"});
  CHECK(r.code == 0);
  CHECK_FALSE(has(r.out, "FAIL"));
}

TEST_CASE("synthetic sweep recovers the planted slope") {
  const auto cfg = write("synthetic.json", R"({"force": [{"a": 2, "b": 1}, {"a": 4}], "synthetic": {"slope": 2.0}})");
  const auto out = scratch_dir() / "sweep_out";
  const auto r = run({"--out", out.string(), "sweep", cfg.string()});
  CHECK(r.code == 0);
  std::ifstream in(out / "sweep.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["fitted_slope"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["verdict"] == "Consistent");
  CHECK(fs::exists(out / "sweep.csv"));
  CHECK(fs::exists(out / "sweep.dat"));
}

TEST_CASE("an inconsistent verdict exits with 2") {
  const auto cfg = write("off.json", R"({"force": [{"a": 2, "b": 1}, {"a": 4}], "synthetic": {"slope": 0.5}})");
  const auto r = run({"--out", (scratch_dir() / "off_out").string(), "sweep", cfg.string()});
  CHECK(r.code == 2);
  CHECK(has(r.out, "Inconsistent"));
}

TEST_CASE("simulate writes a run record and snapshots") {
  const auto cfg = write("sim.json", R"({"force": [{"b": 3, "abs": true}, {"a": 4}], "grid": {"dx": 0.05, "t_max": 2}, "eps": 0.5})");
  const auto out = scratch_dir() / "sim_out";
  fs::remove_all(out);
  const auto r = run({"--out", out.string(), "--snapshot-stride", "10", "simulate", cfg.string()});
  CHECK(r.code == 0);
  std::ifstream in(out / "run.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["solver"] == "fd");
  CHECK(j["norms"]["p_weight"]["text"] == "1/9");
  CHECK(j["norms"]["d_st"].get<double>() > 0.0);
  std::ifstream snaps(out / "snapshots.csv");
  std::string header;
  std::getline(snaps, header);
  CHECK(header == "t,x,u");
}

TEST_CASE("simulate with the Picard solver") {
  const auto cfg = write("pic.json", R"({"force": [{"a": 2, "b": 1}, {"a": 4}], "grid": {"dx": 0.05, "t_max": 1}, "eps": 0.3, "solver": "picard"})");
  const auto out = scratch_dir() / "pic_out";
  const auto r = run({"--out", out.string(), "simulate", cfg.string()});
  CHECK(r.code == 0);
  std::ifstream in(out / "run.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["picard"]["converged"] == true);
}

TEST_CASE("WAVELIFE_OUT is the fallback output directory") {
  const auto cfg = write("synthetic2.json", R"({"force": [{"a": 2, "b": 1}, {"a": 4}], "synthetic": {"slope": 1.8}})");
  const auto out = scratch_dir() / "env_out";
  fs::remove_all(out);
  setenv("WAVELIFE_OUT", out.c_str(), 1);
  const auto r = run({"sweep", cfg.string()});
  unsetenv("WAVELIFE_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "sweep.csv"));
}

TEST_CASE("huygens check") {
  const auto cfg = write("huy.json", R"({"data": {"f": "zero", "g": "bump_derivative"}, "grid": {"dx": 0.05, "t_max": 5}})");
  auto r = run({"huygens", cfg.string()});
  CHECK(r.code == 0);
  const auto bad = write("huy_bad.json", R"({"data": {"g": "bump"}, "grid": {"dx": 0.05, "t_max": 5}})");
  r = run({"huygens", bad.string()});
  CHECK(r.code == 1);
  CHECK(has(r.err, "NotZeroMean"));
}

TEST_CASE("errors exit with 1 and a diagnostic") {
  const auto cfg = write("broken.json", "{\n\"eps\": 0.5,\n\"grid\": {\"dx\": 0.1,}\n}");
  auto r = run({"simulate", cfg.string()});
  CHECK(r.code == 1);
  CHECK(has(r.err, "broken.json:3:"));
  r = run({"theory", "/nonexistent.json"});
  CHECK(r.code == 1);
  r = run({"frobnicate"});
  CHECK(r.code == 1);
  r = run({});
  CHECK(r.code == 1);
}
