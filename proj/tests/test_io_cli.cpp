#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "talbot/cli_app.hpp"
#include "talbot/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("talbot_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = talbot::cli::run(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

std::vector<std::vector<double>> read_csv_rows(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || std::isalpha(line[0])) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("format_g17 round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, -2.5e-13, 0.0}) {
    CHECK(std::stod(talbot::format_g17(v)) == v);
  }
}

TEST_CASE("csv layout") {
  std::string text = talbot::csv_text({{"t", "1/7"}, {"n", "2"}}, "x,re,im",
                                      {{0.5, 1.0, -1.0}});
  CHECK(text.rfind("# t=1/7\n# n=2\nx,re,im\n0.5,1,-1\n", 0) == 0);
}

TEST_CASE("svg emitter") {
  auto svg = talbot::svg_text({0.0, 1.0}, {0.0, 1.0}, "two points");
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg == talbot::svg_text({0.0, 1.0}, {0.0, 1.0}, "two points"));
  CHECK_THROWS_AS(talbot::svg_text({}, {}, "empty"), std::invalid_argument);
  CHECK_THROWS_AS(talbot::svg_text({1.0}, {1.0, 2.0}, "mismatch"), std::invalid_argument);
}

TEST_CASE("cli solve writes plateau-limited csv, bytes deterministic") {
  TempDir dir;
  std::string base = dir.path.string();
  int rc = run_cli({"--out-dir", base, "solve", "--n", "2", "--gamma", "0.3183098861",
                    "--t", "1/7", "--grid", "2048", "--prefix", "run1"});
  REQUIRE(rc == 0);
  auto rows = read_csv_rows(dir.path / "run1.csv");
  REQUIRE(rows.size() == 2048);
  std::set<std::pair<double, double>> plateaus;
  for (const auto& r : rows) plateaus.insert({r[1], r[2]});
  CHECK(plateaus.size() <= 14);

  REQUIRE(run_cli({"--out-dir", base, "solve", "--n", "2", "--gamma", "0.3183098861",
                   "--t", "1/7", "--grid", "2048", "--prefix", "run2"}) == 0);
  CHECK(slurp(dir.path / "run1.csv") == slurp(dir.path / "run2.csv"));
  CHECK(slurp(dir.path / "run1_re.svg") == slurp(dir.path / "run2_re.svg"));
}

TEST_CASE("cli solve at t = 0 reproduces the initial data") {
  TempDir dir;
  REQUIRE(run_cli({"--out-dir", dir.path.string(), "solve", "--t", "0/1", "--grid", "64",
                   "--prefix", "zero"}) == 0);
  auto rows = read_csv_rows(dir.path / "zero.csv");
  REQUIRE(rows.size() == 64);
  const double gamma = talbot::cli::kDefaultGamma;
  for (const auto& r : rows) {
    double x = r[0] - std::floor(r[0]);
    double expect = (x < gamma || x > 1.0 - gamma) ? 1.0 : 0.0;
    CHECK(r[1] == expect);
    CHECK(r[2] == 0.0);
  }
}

TEST_CASE("cli verify suites") {
  std::string out;
  CHECK(run_cli({"verify", "--suite", "parseval", "--seed", "7"}, &out) == 0);
  CHECK(out.find("PASS") != std::string::npos);
  CHECK(run_cli({"verify", "--suite", "nonsense"}, &out) == 1);
}

TEST_CASE("cli parse errors give nonzero exit") {
  std::string out;
  CHECK(run_cli({"frobnicate"}, &out) != 0);
  CHECK(run_cli({"solve"}, &out) != 0);                      // missing --t
  CHECK(run_cli({"solve", "--t", "x/y"}, &out) != 0);        // unparsable fraction
  CHECK(run_cli({"ringing", "--count", "1"}, &out) != 0);    // count below 2
}

TEST_CASE("fig7 preset: S-curve crosses 1/2 at s = 0 within one grid cell") {
  TempDir dir;
  REQUIRE(run_cli({"--out-dir", dir.path.string(), "figure", "--name", "fig7"}) == 0);
  auto rows = read_csv_rows(dir.path / "fig7.csv");
  REQUIRE(rows.size() == 241);
  CHECK(rows.front()[1] > 0.5);  // interior side
  CHECK(rows.back()[1] < 0.5);   // exterior side
  double cell = rows[1][0] - rows[0][0];
  bool crossed_near_zero = false;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if ((rows[i][1] - 0.5) * (rows[i + 1][1] - 0.5) <= 0.0) {
      if (std::abs(rows[i][0]) <= cell + 1e-12) crossed_near_zero = true;
    }
  }
  CHECK(crossed_near_zero);
  CHECK(fs::exists(dir.path / "fig7_re.svg"));
  CHECK(fs::exists(dir.path / "fig7_im.svg"));
}

TEST_CASE("cli approx prints membership") {
  std::string out;
  REQUIRE(run_cli({"approx", "--t", "0.41421356237309515", "--M", "4", "--M-max", "200"},
                  &out) == 0);
  CHECK(out.find("2/5") != std::string::npos);
  CHECK(out.find("in_set_A_m") != std::string::npos);
}

TEST_CASE("cli series emits a grid") {
  TempDir dir;
  REQUIRE(run_cli({"--out-dir", dir.path.string(), "series", "--t", "1/7", "--K", "2000",
                   "--grid", "64", "--prefix", "ser"}) == 0);
  auto rows = read_csv_rows(dir.path / "ser.csv");
  REQUIRE(rows.size() == 64);
}
