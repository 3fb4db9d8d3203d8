#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "doctest.h"
#include "minimax/config.hpp"

namespace fs = std::filesystem;
using namespace minimax;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "minimax");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("minimax_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("list-presets prints every preset") {
  const auto r = call({"list-presets"});
  CHECK(r.code == cli::kExitOk);
  for (const auto& n : preset_names()) CHECK(r.out.find(n + "\n") != std::string::npos);
}

TEST_CASE("plan prints the phase-two steps") {
  const fs::path dir = scratch("plan");
  write(dir / "p.json", R"({"L_f": 2, "nu": 1, "K": 1, "T": 100})");
  const auto r = call({"plan", "--theorem", "2", "--params", (dir / "p.json").string()});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["mu_x"].get<double>() == 0.0);
  CHECK(j["mu_y"].get<double>() == doctest::Approx(plan_theorem2(2, 1, 1, 100).mu_y));
  CHECK(call({"plan", "--theorem", "3", "--params", (dir / "p.json").string()}).code ==
        cli::kExitConfig);
}

TEST_CASE("bad invocations") {
  const auto r = call({"run", "--preset", "does-not-exist"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("--preset") != std::string::npos);
  CHECK(call({"run"}).code == cli::kExitConfig);
  CHECK(call({"frobnicate"}).code == cli::kExitConfig);
  CHECK(call({"run", "--config", "/nonexistent.json"}).code == cli::kExitConfig);
}

TEST_CASE("validate reports the topology") {
  const fs::path dir = scratch("validate");
  write(dir / "ring.json", R"({"K": 3, "neighbors": [[0, 1, 2], [0, 1, 2], [0, 1, 2]]})");
  auto r = call({"validate", "--topology", (dir / "ring.json").string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(Json::parse(r.out)["ok"] == true);
  write(dir / "split.json", R"({"K": 2, "A": [1, 0, 0, 1]})");
  r = call({"validate", "--topology", (dir / "split.json").string()});
  CHECK(r.code == cli::kExitRuntime);
  CHECK(Json::parse(r.out)["ok"] == false);
}

TEST_CASE("run writes reproducible outputs") {
  const fs::path dir = scratch("run");
  ExperimentConfig c = preset("quadratic-ring8");
  c.T = 40;
  c.T1 = 10;
  c.n_repeats = 2;
  c.compare = {Algorithm::kGda};
  write(dir / "cfg.json", config_to_json(c).dump());

  const fs::path a = dir / "a", b = dir / "b";
  REQUIRE(call({"run", "--config", (dir / "cfg.json").string(), "--out", a.string()}).code ==
          cli::kExitOk);
  ::setenv("MINIMAX_OUT", b.string().c_str(), 1);
  const auto r = call({"run", "--config", (dir / "cfg.json").string(), "--out", "ignored"});
  ::unsetenv("MINIMAX_OUT");
  REQUIRE(r.code == cli::kExitOk);
  CHECK(!fs::exists("ignored"));
  for (const char* f : {"trace.csv", "summary.json", "config.json", "trace_gda.csv"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "trace.csv").rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  const Json s = Json::parse(slurp(a / "summary.json"));
  CHECK(s.contains("best_index"));
  CHECK(config_from_json(Json::parse(slurp(a / "config.json"))).T == 40);
}
