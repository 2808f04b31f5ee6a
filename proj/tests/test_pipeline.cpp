#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "phasec/io.hpp"
#include "phasec/pipeline.hpp"
#include "phasec/verify.hpp"

using namespace phasec;
namespace fs = std::filesystem;

namespace {

RunConfig small_run() {
  RunConfig c;
  c.n_spins = 6;
  c.field_scale = 2.0;
  c.t1 = 1.0;
  c.dt = 0.1;
  c.snapshots = {0.0, 0.5};
  c.outputs.weyl = true;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("phasec_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("PHASEC_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "PHASEC_CLI must point at the phasec binary");
  const int status = std::system((std::string(cli) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("time grid") {
  RunConfig c;
  c.t0 = 0.0;
  c.t1 = 1.0;
  c.dt = 0.25;
  CHECK(c.time_grid() == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
  c.dt = 0.05;
  const auto g = c.time_grid();
  CHECK(g.size() == 21);
  CHECK(g[3] == 0.15);
  c.t1 = 0.12;
  CHECK(c.time_grid().back() == 0.12);  // endpoint appended when off-grid
  c.t1 = c.t0;
  CHECK(c.time_grid().size() == 1);
}

TEST_CASE("zero-length run has a single frame with fidelity one") {
  RunConfig c = small_run();
  c.t1 = 0.0;
  c.snapshots = {0.0};
  const RunResult r = Simulation(c).run();
  REQUIRE(r.frames.size() == 1);
  CHECK(r.frames[0].fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("configuration validation names the field") {
  RunConfig c;
  c.n_spins = 5;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "n_spins");
  }
  c = RunConfig{};
  c.dt = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.snapshots = {20.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.gamma = 2.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(preset("nope"), ConfigError);
  CHECK_THROWS_AS(parse_route("fast"), ConfigError);
  CHECK_THROWS_AS(OutputSet::parse({"plots"}), ConfigError);
}

TEST_CASE("JSON configuration mirrors the run configuration") {
  RunConfig c = small_run();
  c.route = Route::exact;
  RunConfig d;
  apply_json(d, config_to_json(c));
  CHECK(config_to_json(d) == config_to_json(c));
  CHECK_THROWS_AS(apply_json(d, json{{"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(apply_json(d, json{{"dt", "small"}}), ConfigError);
  RunConfig e;
  apply_json(e, json{{"preset", "figb1"}, {"dt", 0.1}});
  CHECK(e.model == Model::kitagawa_ueda);
  CHECK(e.dt == 0.1);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 2.15, 1.0 / 3.0, -7.25e-12, 1e300, 123456789.0}) {
    const std::string s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(2.15) == "2.15");
  CHECK(format_number(kUndefined) == "nan");
  CHECK(snapshot_name("wigner", 7.1) == "wigner_t7.1.csv");
}

TEST_CASE("sha256 of known vectors") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("run outputs, manifest and checksums") {
  const RunConfig c = small_run();
  const RunResult r = Simulation(c).run();
  const fs::path dir = scratch("outputs");
  OutputDir out(dir);
  write_run(c, r, out);
  out.write_manifest("evolve", config_to_json(c), 0.0);
  const json m = json::parse(slurp(dir / "manifest.json"));
  CHECK(m["version"] == version());
  CHECK(m["config"]["n_spins"] == 6);
  std::vector<std::string> names;
  for (const auto& f : m["files"]) {
    names.push_back(f["name"]);
    CHECK(sha256_file(dir / f["name"].get<std::string>()) == f["sha256"]);
  }
  for (const char* want : {"moments.csv", "criteria.csv", "entropies.csv", "fidelity.csv",
                           "wigner_t0.csv", "husimi_t0.5.csv", "weyl_t0.5.csv"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  const std::string grid = slurp(dir / "wigner_t0.5.csv");
  CHECK(grid.rfind("mu,nu,theta_nu,value\n", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 1 + 49);
  CHECK(slurp(dir / "weyl_t0.csv").rfind("eta,xi,re_value,im_value\n", 0) == 0);
  const std::string crit = slurp(dir / "criteria.csv");
  CHECK(crit.find("E_sorensen_z") != std::string::npos);
  CHECK(crit.find("S_z_x") != std::string::npos);
}

TEST_CASE("identical configurations give identical files") {
  const RunConfig c = small_run();
  const RunResult a = Simulation(c, Exec::parallel).run();
  const RunResult b = Simulation(c, Exec::parallel).run();
  const RunResult s = Simulation(c, Exec::serial).run();
  for (auto table : {moments_table, criteria_table, entropies_table}) {
    CHECK(table(a.frames).render() == table(b.frames).render());
    CHECK(table(a.frames).render() == table(s.frames).render());
  }
  CHECK(wigner_grid_table(a.snapshots[1].husimi).render() == wigner_grid_table(s.snapshots[1].husimi).render());
}

TEST_CASE("routes agree and the cross-check records deviations") {
  RunConfig c = small_run();
  c.verify_route = true;
  for (Route r : {Route::wigner_prop, Route::weyl_prop}) {
    c.route = r;
    const RunResult res = Simulation(c).run();
    CHECK(res.max_route_deviation < 1e-10);
  }
}

TEST_CASE("window and extremum helpers") {
  const std::vector<double> t{0, 1, 2, 3, 4, 5};
  const auto w = violation_windows(t, {false, true, true, false, true, true});
  REQUIRE(w.size() == 2);
  CHECK(w[0].start == 1);
  CHECK(w[0].end == 2);
  CHECK(w[1].end == 5);
  CHECK(flag_agreement({true, false, true, true}, {true, true, true, false}) == 0.5);
  CHECK(first_local_min({3, 2, 1, 2, 0}) == 2);
  CHECK(first_local_max({3, 2, 1, 2, 0}) == 3);
  CHECK(first_local_min({1, 2, 3}) == -1);
}

TEST_CASE("empty gamma sweep") {
  CHECK(sweep_gamma(small_run(), {}).empty());
  const auto rows = sweep_gamma(small_run(), {0.3});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].result.frames.size() == 11);
  CHECK(sweep_summary_table(rows).rows.size() == 1);
}

TEST_CASE("fast verification suites pass") {
  for (const auto& s : run_verify(VerifyLevel::fast)) {
    INFO(s.name, " ", s.detail);
    CHECK(s.passed);
  }
}

TEST_CASE("command line exit codes and outputs") {
  const fs::path dir = scratch("cli");
  CHECK(run_cli("evolve --nspins 4 --t1 0.5 --dt 0.1 --snapshots 0,0.5 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "wigner_t0.5.csv"));
  CHECK(run_cli("evolve --nspins 5 --out " + dir.string()) == 2);
  CHECK(run_cli("evolve --route sideways --out " + dir.string()) == 2);
  CHECK(run_cli("evolve --no-such-flag") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("evolve --config /nonexistent.json") == 2);
  CHECK(run_cli("--help") == 0);

  const fs::path coh = scratch("cli_coherent");
  CHECK(run_cli("coherent-wigner --j 2 --theta 0.5 --phi 0.1 --out " + coh.string()) == 0);
  CHECK(fs::exists(coh / "coherent_wigner.csv"));
  CHECK(fs::exists(coh / "coherent_husimi.csv"));
  CHECK(run_cli("coherent-wigner --j 1.5 --out " + coh.string()) == 2);

  const fs::path env_dir = scratch("cli_env");
  const std::string cmd = std::string(kOutDirEnv) + "=" + env_dir.string() + " ";
  const char* cli = std::getenv("PHASEC_CLI");
  REQUIRE(cli != nullptr);
  CHECK(std::system((cmd + cli + " ku-analytic --j 0.5 --t1 1 --dt 0.5 > /dev/null").c_str()) == 0);
  CHECK(fs::exists(env_dir / "ku_moments.csv"));
  CHECK(fs::exists(env_dir / "ku_check.csv"));

  const fs::path sweep = scratch("cli_sweep");
  CHECK(run_cli("sweep-gamma --out " + sweep.string()) == 0);
  CHECK(slurp(sweep / "sweep_summary.csv").find('\n') == slurp(sweep / "sweep_summary.csv").size() - 1);
  CHECK(run_cli("sweep-gamma --gamma 1.5 --out " + sweep.string()) == 2);
  CHECK(run_cli("verify --level fast") == 0);
  CHECK(run_cli("verify --level medium") == 2);
}
