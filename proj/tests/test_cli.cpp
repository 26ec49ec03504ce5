#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "eltsim/commands.hpp"

namespace fs = std::filesystem;
using eltsim::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("eltsim_cli_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> readCsv(const std::string& text,
                                         std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

const char* kConfigText =
    "mass_kg = 1.44e-25\nsigma0_m = 10e-9\nbeta_m = 10e-9\nd_m = 180e-9\n"
    "t_s = 20e-6\ntau_s = 20e-6\n";

}  // namespace

TEST_CASE("intensity writes a symmetric CSV and a manifest") {
  TempDir dir;
  const auto out = dir.file("elt.csv");
  const auto r = invoke({"intensity", "--branch", "elt", "--out", out});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = readCsv(slurp(out), &header);
  CHECK(header == "x_m,intensity,visibility_pointwise");
  REQUIRE(rows.size() == 2001);
  double top = 0.0;
  for (const auto& row : rows) top = std::max(top, row[1]);
  CHECK(top == 1.0);
  CHECK(rows[1000][1] == 1.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i][1] - rows[rows.size() - 1 - i][1]) <= 1e-12);
    CHECK(rows[i][0] == doctest::Approx(-rows[rows.size() - 1 - i][0]));
  }

  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "intensity");
  CHECK(manifest["branch"] == "elt");
  CHECK(manifest["normalization"] == "peak");
  CHECK(manifest["derived"]["epsilon_s"].get<double>() ==
        doctest::Approx(3.476e-6).epsilon(1e-3));
  CHECK(manifest["coefficients"]["ztable"].contains("z10"));
  CHECK(manifest["config"]["d_m"].get<double>() == 180e-9);
}

TEST_CASE("identical runs give identical CSV bodies") {
  TempDir dir;
  const auto a = dir.file("a.csv"), b = dir.file("b.csv");
  REQUIRE(invoke({"intensity", "--branch", "full", "--out", a}).code == 0);
  REQUIRE(invoke({"--raw", "intensity", "--branch", "full", "--out", b}).code == 0);
  CHECK(slurp(a) != slurp(b));
  REQUIRE(invoke({"--raw", "intensity", "--branch", "full", "--out", a}).code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("ground branch has no pointwise coherence") {
  const auto r = invoke({"intensity", "--branch", "ground", "--grid-points", "301"});
  REQUIRE(r.code == 0);
  const auto rows = readCsv(r.out);
  REQUIRE(rows.size() == 301);
  for (const auto& row : rows) CHECK(row[2] == 0.0);
}

TEST_CASE("fringes and anti-fringes are complementary") {
  const auto p = readCsv(invoke({"--raw", "intensity", "--branch", "fringes",
                                 "--grid-points", "101"}).out);
  const auto m = readCsv(invoke({"--raw", "intensity", "--branch", "antifringes",
                                 "--grid-points", "101"}).out);
  const auto g = readCsv(invoke({"--raw", "intensity", "--branch", "ground",
                                 "--grid-points", "101"}).out);
  REQUIRE(p.size() == 101);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i][1] + m[i][1] == doctest::Approx(2.0 * g[i][1]).epsilon(1e-10));
  }
}

TEST_CASE("grid flags") {
  const auto r = invoke({"intensity", "--grid-min", "-1e-6", "--grid-max",
                         "1e-6", "--grid-points", "11"});
  REQUIRE(r.code == 0);
  const auto rows = readCsv(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows.front()[0] == -1e-6);
  CHECK(rows.back()[0] == 1e-6);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(invoke({"intensity", "--branch", "sideways"}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"--help"}).code == 0);

  const auto bad = dir.file("bad.cfg");
  writeFile(bad, "mass_kg = heavy\n");
  const auto r = invoke({"--config", bad, "intensity"});
  CHECK(r.code == 2);
  CHECK(r.err.find("mass_kg") != std::string::npos);
  CHECK(invoke({"--config", dir.file("missing.cfg"), "verify"}).code == 2);

  CHECK(invoke({"--out", "/nonexistent/dir/out.csv", "intensity"}).code == 4);
  CHECK(invoke({"--out", dir.file("x.csv"), "--grid-points", "1", "--grid-min",
                "0", "intensity"}).code == 0);
}

TEST_CASE("verify") {
  TempDir dir;
  const auto cfg = dir.file("rb.cfg");
  writeFile(cfg, kConfigText);
  const auto out = dir.file("verify.txt");
  const auto r = invoke({"--config", cfg, "--out", out, "verify"});
  CHECK(r.code == 0);
  const auto report = slurp(out);
  CHECK(report.find("result: PASS") != std::string::npos);
  CHECK(report.find("psi12") != std::string::npos);
  CHECK(report.find("psi21") != std::string::npos);
  CHECK(report.find("theta_et[8]") != std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["pass"] == true);
  CHECK(manifest["points"] == 101);
  CHECK(manifest["results"]["closed_vs_chain"]["psi12"]
                ["max_relative_deviation"].get<double>() < 1e-6);

  SUBCASE("fault injection names the term") {
    const auto bad = invoke({"verify", "--corrupt", "z6"});
    CHECK(bad.code == 3);
    CHECK(bad.out.find("result: FAIL") != std::string::npos);
    CHECK(bad.out.find("failing terms: z6") != std::string::npos);
    CHECK(invoke({"verify", "--corrupt", "nonsense"}).code == 1);
  }

  SUBCASE("single point") {
    const auto one = invoke({"verify", "--points", "1"});
    CHECK(one.code == 0);
    CHECK(one.out.find("grid: 1 points") != std::string::npos);
  }

  SUBCASE("tight tolerance can fail") {
    CHECK(invoke({"--tolerance", "1e-30", "verify"}).code == 3);
  }
}

TEST_CASE("states") {
  auto r = invoke({"states", "--measurement", "internal"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("r = 0.5\n") != std::string::npos);
  CHECK(r.out.find("s = 0.5\n") != std::string::npos);

  r = invoke({"states", "--measurement", "bell"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("p_phi+ = 0.25\n") != std::string::npos);
  CHECK(r.out.find("q = 0.5\n") != std::string::npos);

  TempDir dir;
  const auto cfg = dir.file("direct.cfg");
  writeFile(cfg, std::string(kConfigText) + "amp_exotic_re = 0\n");
  r = invoke({"--config", cfg, "states", "--measurement", "bell"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("q = 0\n") != std::string::npos);

  r = invoke({"states", "--measurement", "none"});
  REQUIRE(r.code == 0);
  // Row "1:" has no coherence with 2; row "12:" couples to 21.
  CHECK(r.out.find("1:  +0.25+0i  +0+0i  +0+0i  +0+0i") != std::string::npos);
  CHECK(r.out.find("12:  +0+0i  +0+0i  +0.25+0i  +0.25+0i") != std::string::npos);

  CHECK(invoke({"states", "--measurement", "weak"}).code == 1);
}

TEST_CASE("sweep") {
  auto r = invoke({"sweep", "--param", "d", "--min", "90e-9", "--max",
                   "360e-9", "--steps", "4"});
  REQUIRE(r.code == 0);
  std::string header;
  auto rows = readCsv(r.out, &header);
  CHECK(header ==
        "param_value,epsilon_s,gamma_et,fringe_spacing_m,aggregate_visibility,"
        "mu_et");
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row[1] / row[0] == doctest::Approx(rows[0][1] / rows[0][0]).epsilon(1e-12));
    CHECK(row[3] == doctest::Approx(std::numbers::pi / std::abs(row[2])));
  }

  rows = readCsv(invoke({"sweep", "--param", "beta", "--min", "1e-8", "--max",
                         "1e-8", "--steps", "5"}).out);
  CHECK(rows.size() == 1);

  rows = readCsv(invoke({"sweep", "--param", "t", "--min", "2e-6", "--max",
                         "2e-4", "--steps", "60"}).out);
  REQUIRE(rows.size() == 60);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i][5] - rows[i - 1][5]) < 0.5);
  }

  CHECK(invoke({"sweep", "--param", "mass", "--min", "1", "--max", "2",
                "--steps", "2"}).code == 1);
  CHECK(invoke({"sweep", "--param", "d", "--min", "-1", "--max", "2",
                "--steps", "2"}).code == 1);
}
