#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nsom/cli.hpp"
#include "nsom/csvio.hpp"
#include "nsom/errors.hpp"

using namespace nsom;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("nsom_test_" + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int data_rows(const std::string& csv) {
  int rows = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  return rows;
}

RunConfig fig3a_config() {
  RunConfig cfg;
  cfg.tip.kind = "aperture";
  cfg.tip.height = 10.0;
  cfg.sample.emitters = {-25.0, 25.0};
  return cfg;
}

}  // namespace

TEST_CASE("minimal config picks up every default") {
  const RunConfig cfg = parse_config("[tip]\nkind = point\norientation = z\n");
  CHECK(cfg == RunConfig{});
  CHECK(cfg.tip.wavelength == 600.0);
  CHECK(cfg.tip.height == 10.0);
  CHECK(cfg.tip.a == 40.0);
  CHECK(cfg.environment.type == "halfspace");
  CHECK(cfg.environment.epsilon == 2.25);
  CHECK(cfg.scan.step == 1.0);
  CHECK(cfg.scan.x_min == -200.0);
  CHECK(cfg.scan.x_max == 200.0);
}

TEST_CASE("validation failures carry the violated invariant") {
  CHECK_THROWS_WITH_AS(parse_config("[tip]\nheight = -5\n"),
                       "height must be positive", ValidationError);
  CHECK_THROWS_AS(parse_config("[tip]\nn_segments = 17\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[environment]\ntype = air\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[tip]\norientation = 0,0,0\n"), ValidationError);
}

TEST_CASE("unknown keys and malformed lines are parse errors with line numbers") {
  try {
    parse_config("[tip]\nkind = point\ncolor = red\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("tip.color") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[nope]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[tip]\nheight\n"), ParseError);
  CHECK_THROWS_AS(parse_config("height = 4\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[tip]\nheight = abc\n"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const RunConfig cfg = parse_config(
      "# a comment\n\n[tip]\nkind = point  # trailing\n\n# done\n");
  CHECK(cfg.tip.kind == "point");
}

TEST_CASE("parse-render round trip holds for random configs") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 500.0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    RunConfig cfg;
    cfg.tip.kind = coin(rng) ? "aperture" : "point";
    cfg.tip.a = u(rng);
    cfg.tip.sigma0 = u(rng);
    cfg.tip.include_magnetic = coin(rng);
    cfg.tip.n_segments = 16 + 2 * (int(u(rng)) % 300);
    cfg.tip.height = u(rng);
    cfg.tip.wavelength = u(rng);
    const Vec3 o{u(rng) - 250.0, u(rng) - 250.0, u(rng) - 250.0};
    if (o.norm() > 0.0) cfg.tip.orientation = o.normalized();
    cfg.environment.type = coin(rng) ? "vacuum" : "halfspace";
    cfg.environment.epsilon = 1.0 + u(rng) / 100.0;
    cfg.environment.interface_side = coin(rng) ? "above" : "below";
    cfg.sample.emitters = {u(rng) - 250.0, u(rng) - 250.0};
    cfg.scan.x_min = -u(rng) - 300.0;
    cfg.scan.x_max = u(rng) + 300.0;
    cfg.scan.step = u(rng) / 100.0;
    cfg.scan.threads = int(u(rng)) % 8;
    cfg.grid.nx = 2 + int(u(rng)) % 60;
    cfg.grid.nz = 2 + int(u(rng)) % 60;
    cfg.output.normalize = coin(rng);
    cfg.output.dir = "out";
    CAPTURE(trial);
    CHECK(parse_config(render_config(cfg)) == cfg);
  }
}

TEST_CASE("scan subcommand writes 401 rows for the +-200 nm, 1 nm grid") {
  TempDir dir("scan");
  const RunConfig cfg = fig3a_config();
  CHECK(run_subcommand("scan", cfg, dir.path.string(), 1) == 0);
  const std::string csv = slurp(dir.path / "scan.csv");
  CHECK(data_rows(csv) == 401);
  // header embeds the resolved config
  CHECK(csv.find("# kind = aperture") != std::string::npos);
  CHECK(csv.find("# wavelength = 600") != std::string::npos);
}

TEST_CASE("scan output is byte-identical across runs and thread counts") {
  TempDir d1("det1"), d2("det2"), d4("det4");
  const RunConfig cfg = fig3a_config();
  REQUIRE(run_subcommand("scan", cfg, d1.path.string(), 1) == 0);
  REQUIRE(run_subcommand("scan", cfg, d2.path.string(), 1) == 0);
  REQUIRE(run_subcommand("scan", cfg, d4.path.string(), 4) == 0);
  const std::string a = slurp(d1.path / "scan.csv");
  CHECK(a == slurp(d2.path / "scan.csv"));
  CHECK(a == slurp(d4.path / "scan.csv"));
}

TEST_CASE("NSOM_THREADS env var overrides the config") {
  TempDir denv("env"), dref("ref");
  const RunConfig cfg = fig3a_config();
  REQUIRE(run_subcommand("scan", cfg, dref.path.string(), 1) == 0);
  ::setenv("NSOM_THREADS", "3", 1);
  const int rc = run_subcommand("scan", cfg, denv.path.string(), 1);
  ::unsetenv("NSOM_THREADS");
  CHECK(rc == 0);
  CHECK(slurp(denv.path / "scan.csv") == slurp(dref.path / "scan.csv"));

  ::setenv("NSOM_THREADS", "lots", 1);
  const int bad = run_subcommand("scan", cfg, denv.path.string(), 1);
  ::unsetenv("NSOM_THREADS");
  CHECK(bad == 1);
}

TEST_CASE("sweep subcommand emits one row per height") {
  TempDir dir("sweep");
  RunConfig cfg;
  cfg.sample.emitters = {-25.0, 25.0};
  cfg.scan.heights = {10, 20, 30, 40, 50, 100};
  CHECK(run_subcommand("sweep", cfg, dir.path.string(), 0) == 0);
  CHECK(data_rows(slurp(dir.path / "sweep.csv")) == 6);
}

TEST_CASE("sweep requires exactly two emitters") {
  TempDir dir("sweep2");
  RunConfig cfg;  // one emitter by default
  CHECK(run_subcommand("sweep", cfg, dir.path.string(), 0) == 1);
  CHECK_FALSE(fs::exists(dir.path / "sweep.csv"));
}

TEST_CASE("fieldmap subcommand writes a well-formed PGM plus CSVs") {
  TempDir dir("map");
  RunConfig cfg;  // default grid avoids the default tips
  cfg.grid.nx = 41;
  cfg.grid.nz = 41;
  CHECK(run_subcommand("fieldmap", cfg, dir.path.string(), 0) == 0);

  std::istringstream pgm(slurp(dir.path / "fieldmap.pgm"));
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  pgm >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 41);
  CHECK(h == 41);
  CHECK(maxval == 65535);
  int count = 0, v = 0, top = -1;
  while (pgm >> v) {
    CHECK(v >= 0);
    CHECK(v <= 65535);
    top = std::max(top, v);
    ++count;
  }
  CHECK(count == 41 * 41);
  CHECK(top == 65535);  // the maximum pixel saturates the scale

  CHECK(data_rows(slurp(dir.path / "fieldmap.csv")) == 41 * 41);
  CHECK(fs::exists(dir.path / "fieldlines.csv"));
}

TEST_CASE("numerical failures return exit code 2 and clean up") {
  TempDir dir("sing");
  RunConfig cfg;
  cfg.tip.kind = "aperture";
  cfg.grid = GridConfig{39.0, 41.0, 9.0, 11.0, 3, 3};  // rim point on the grid
  CHECK(run_subcommand("fieldmap", cfg, dir.path.string(), 0) == 2);
  CHECK_FALSE(fs::exists(dir.path / "fieldmap.pgm"));
  CHECK_FALSE(fs::exists(dir.path / "fieldmap.csv"));
}

TEST_CASE("quantum subcommand: populations and saturation tables") {
  TempDir dir("quantum");
  RunConfig cfg;
  CHECK(run_subcommand("quantum", cfg, dir.path.string(), 0) == 0);
  const std::string pops = slurp(dir.path / "quantum_populations.csv");
  CHECK(data_rows(pops) == 201);
  const std::string sat = slurp(dir.path / "quantum_saturation.csv");
  CHECK(data_rows(sat) == 62);
  // saturation tail approaches 1/2 from below
  std::istringstream in(sat);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') last = line;
  const double tail = std::stod(last.substr(last.find(',') + 1));
  CHECK(tail < 0.5);
  CHECK(tail > 0.499);
}

TEST_CASE("normalization rescales the scan maximum to one") {
  TempDir dir("norm");
  RunConfig cfg = fig3a_config();
  cfg.output.normalize = true;
  REQUIRE(run_subcommand("scan", cfg, dir.path.string(), 1) == 0);
  const std::string csv = slurp(dir.path / "scan.csv");
  std::istringstream in(csv);
  std::string line;
  double peak = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    peak = std::max(peak, std::stod(line.substr(line.find(',') + 1)));
  }
  CHECK(peak == 1.0);
}

TEST_CASE("unknown subcommand is a config error") {
  TempDir dir("unknown");
  CHECK(run_subcommand("render", RunConfig{}, dir.path.string(), 0) == 1);
}

TEST_CASE("unwritable output directory is an i/o error") {
  TempDir dir("io");
  const fs::path blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  CHECK(run_subcommand("scan", RunConfig{}, (blocker / "sub").string(), 1) == 3);
}

TEST_CASE("validate subcommand passes on a pristine build") {
  CHECK(run_subcommand("validate", RunConfig{}, "", 0) == 0);
}
