#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ghostpin/commands.hpp"
#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"

using namespace ghostpin;
namespace fs = std::filesystem;

namespace {

RunConfig small_double_slit_config(const std::string& out_dir) {
  RunConfig cfg;
  cfg.setup.sigma_p = 167e-6;
  cfg.setup.d = 0.3;
  cfg.setup.z_s = 0.6;
  cfg.setup.pm_model = PmModel::gaussian;
  cfg.setup.propagation_mode = PropagationMode::paraxial;
  cfg.grid.automatic = false;
  cfg.grid.n_s = 2048;
  cfg.grid.n_i = 512;
  cfg.grid.window_s = 30e-3;
  cfg.grid.window_i = 20e-3;
  cfg.object.kind = ObjectKind::double_slit;
  cfg.object.separation = 940e-6;
  cfg.object.width = 50e-6;
  cfg.run.threads = 2;
  cfg.output.dir = out_dir;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Parses a simple numeric CSV with a single header line.
std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse_double(cell));
    rows.push_back(row);
  }
  return rows;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_test_out") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path.parent_path()); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("ghost output is byte-identical across reruns") {
  TempDir dir_a("rerun_a");
  TempDir dir_b("rerun_b");
  const RunConfig cfg = small_double_slit_config(dir_a.str());
  cmd_ghost(cfg, {});
  RunConfig again = cfg;
  again.output.dir = dir_b.str();
  cmd_ghost(again, {});
  CHECK(slurp(dir_a.str() + "/ghost.csv") == slurp(dir_b.str() + "/ghost.csv"));
}

TEST_CASE("bucket distance does not alter the ghost column") {
  TempDir dir_a("zs_a");
  TempDir dir_b("zs_b");
  RunConfig cfg = small_double_slit_config(dir_a.str());
  cmd_ghost(cfg, {});
  cfg.setup.z_s = 0.45;
  cfg.output.dir = dir_b.str();
  cmd_ghost(cfg, {});
  const auto a = read_csv(dir_a.str() + "/ghost.csv");
  const auto b = read_csv(dir_b.str() + "/ghost.csv");
  REQUIRE(a.size() == b.size());
  double peak = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    peak = std::max(peak, a[i][1]);
    diff = std::max(diff, std::fabs(a[i][1] - b[i][1]));
  }
  CHECK(diff <= 1e-10 * peak);
}

TEST_CASE("jsp emits matrix, preview and sidecars") {
  TempDir dir("jsp");
  RunConfig cfg = small_double_slit_config(dir.str());
  cfg.run.cut = true;
  cfg.run.cut_xs = 0.0;
  cmd_jsp(cfg, {});
  CHECK(fs::exists(dir.path / "jsp.csv"));
  CHECK(fs::exists(dir.path / "jsp.pgm"));
  CHECK(fs::exists(dir.path / "jsp.csv.meta.json"));
  CHECK(fs::exists(dir.path / "jsp_cut.csv"));
  // matrix has n_s rows
  std::ifstream in(dir.path / "jsp.csv");
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2048);
}

TEST_CASE("auto grid without an object block is a config error") {
  TempDir dir("noobj");
  RunConfig cfg;
  cfg.output.dir = dir.str();
  try {
    cmd_jsp(cfg, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(is_config_error(e.code()));
  }
}

TEST_CASE("analytic honours the threshold override") {
  TempDir dir_a("th_a");
  TempDir dir_b("th_b");
  RunConfig cfg;
  cfg.setup.sigma_p = 258e-6;
  cfg.setup.d = 1.0;
  cfg.output.dir = dir_a.str();
  cmd_analytic(cfg, {});
  cfg.run.threshold = 0.5;
  cfg.output.dir = dir_b.str();
  cmd_analytic(cfg, {});
  const auto a = read_csv(dir_a.str() + "/analytic.csv");
  const auto b = read_csv(dir_b.str() + "/analytic.csv");
  // resolution column shrinks when the threshold rises
  CHECK(b[0][5] < a[0][5]);
}

TEST_CASE("sweep over d: far-field magnification scales as 1/d") {
  TempDir dir("sweepd");
  RunConfig cfg;
  cfg.setup.sigma_p = 167e-6;
  cfg.setup.z_s = 4.2;
  cfg.run.axis = "d";
  cfg.run.from = 2.0;
  cfg.run.to = 4.0;
  cfg.run.points = 3;
  cfg.output.dir = dir.str();
  cmd_sweep(cfg, {});
  const auto rows = read_csv(dir.str() + "/sweep.csv");
  REQUIRE(rows.size() == 3);
  // columns: d, sigma_g, magnification, sigma_0, resolution
  const double m2 = rows[0][2], m4 = rows[2][2];
  CHECK(std::fabs(m2 / m4 - 2.0) < 0.05 * 2.0);
}

TEST_CASE("sweep over sigma_p brackets the width minimum") {
  TempDir dir("sweepsp");
  RunConfig cfg;
  cfg.setup.d = 0.3;
  cfg.run.axis = "sigma_p";
  cfg.run.from = 50e-6;
  cfg.run.to = 800e-6;
  cfg.run.points = 200;
  cfg.output.dir = dir.str();
  cmd_sweep(cfg, {});
  const auto rows = read_csv(dir.str() + "/sweep.csv");
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i][1] < rows[best][1]) best = i;
  CHECK(rows[best][0] > 0.85 * 167e-6);
  CHECK(rows[best][0] < 1.15 * 167e-6);
  CHECK(best > 0);
  CHECK(best < rows.size() - 1);
}

TEST_CASE("sweep over crystal thickness: engine-backed mode count falls") {
  TempDir dir("sweeplz");
  RunConfig cfg;
  cfg.setup.sigma_p = 258e-6;
  cfg.setup.d = 0.5;
  cfg.run.axis = "l_z";
  cfg.run.from = 2e-3;
  cfg.run.to = 10e-3;
  cfg.run.points = 3;
  cfg.run.threads = 4;
  cfg.run.engine_sigma_s = true;
  cfg.output.dir = dir.str();
  cmd_sweep(cfg, {});
  const auto rows = read_csv(dir.str() + "/sweep.csv");
  REQUIRE(rows.size() == 3);
  // columns: l_z, sigma_g, magnification, sigma_0, resolution, sigma_s, n_modes
  CHECK(rows[0][6] > rows[1][6]);
  CHECK(rows[1][6] > rows[2][6]);
}

TEST_CASE("sweep validates its range") {
  RunConfig cfg;
  cfg.run.axis = "sigma_p";
  cfg.run.from = 500e-6;
  cfg.run.to = 100e-6;
  cfg.run.points = 10;
  cfg.output.dir = "cli_test_out/never";
  try {
    cmd_sweep(cfg, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundsInvalid);
  }
  fs::remove_all("cli_test_out");
}

TEST_CASE("optimize writes the pump optimum") {
  TempDir dir("opt");
  RunConfig cfg;
  cfg.setup.d = 0.3;
  cfg.run.objective = "sigma_g";
  cfg.run.from = 50e-6;
  cfg.run.to = 800e-6;
  cfg.output.dir = dir.str();
  cmd_optimize(cfg, {});
  const auto rows = read_csv(dir.str() + "/optimize.csv");
  CHECK(std::fabs(rows[0][1] - 167e-6) < 0.15 * 167e-6);
}

#ifdef GHOSTPIN_CLI_PATH
TEST_CASE("binary exit codes: 2 for config trouble, 0 for success") {
  const std::string cli = GHOSTPIN_CLI_PATH;
  fs::create_directories("cli_bin_out");
  {
    std::ofstream bad("cli_bin_out/bad.conf");
    bad << "[setup]\nlambda_p = banana\n";
  }
  int rc = std::system((cli + " analytic --config cli_bin_out/bad.conf"
                              " --out cli_bin_out >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 2);

  {
    std::ofstream ok("cli_bin_out/ok.conf");
    ok << "[setup]\nsigma_p = 258um\nd = 1m\n";
  }
  rc = std::system((cli + " analytic --config cli_bin_out/ok.conf"
                          " --out cli_bin_out >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 0);

  rc = std::system((cli + " analytic --config cli_bin_out/missing.conf"
                          " --out cli_bin_out >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 2);
  fs::remove_all("cli_bin_out");
}
#endif
