#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "numrange_lab/io.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/theory.hpp"

using namespace numrange_lab;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(NUMRANGE_LAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "nrl_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::size_t line_count(const fs::path& path) {
  std::string text = read_file(path);
  return std::size_t(std::count(text.begin(), text.end(), '\n'));
}

SupportCurve<double> small_curve() {
  auto axes = elliptic_axes(0.4);
  std::function<double(double)> support = [axes](double t) {
    return ellipse_support(axes, t);
  };
  std::function<double(double)> dsupport = [axes](double t) {
    double lambda = ellipse_support(axes, t);
    return (axes.b * axes.b - axes.a * axes.a) * std::sin(t) * std::cos(t) / lambda;
  };
  return theoretical_curve(uniform_theta_grid<double>(12), support, &dsupport);
}

}  // namespace

TEST_CASE("full-precision formatting round-trips doubles") {
  for (double v : {1.0 / 3.0, 1e-300, 12345.678901234567, -2.5e17, 0.1 + 0.2}) {
    CHECK(std::stod(format_full(v)) == v);
  }
  double negzero = std::stod(format_full(-0.0));
  CHECK(negzero == 0.0);
  CHECK(std::signbit(negzero));
}

TEST_CASE("support CSV round-trips through the reader") {
  auto curve = small_curve();
  std::ostringstream os;
  write_support_csv(os, curve);
  std::istringstream is(os.str());
  CsvTable table = read_csv(is);
  REQUIRE(table.header == std::vector<std::string>{"theta", "lambda", "re_z", "im_z"});
  REQUIRE(table.rows.size() == curve.thetas.size());
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    CHECK(table.rows[k][0] == curve.thetas[k]);
    CHECK(table.rows[k][1] == curve.values[k]);
    CHECK(table.rows[k][2] == curve.points[k].real());
    CHECK(table.rows[k][3] == curve.points[k].imag());
  }

  SupportCurve<double> pointless;
  pointless.thetas = {0.0, 1.0, 2.0};
  pointless.values = {1.0, 1.0, 1.0};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_support_csv(sink, pointless), contract_error);
}

TEST_CASE("polygon and eigenvalue CSV writers") {
  std::ostringstream pos;
  write_polygon_csv(pos, std::vector<Vec2<double>>{{1.5, -2.5}, {0.25, 0.75}});
  std::istringstream pis(pos.str());
  CsvTable table = read_csv(pis);
  REQUIRE(table.header == std::vector<std::string>{"x", "y"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][0] == 1.5);
  CHECK(table.rows[1][1] == 0.75);

  std::ostringstream eos;
  write_eigenvalues_csv(eos, {{1.0, 2.0}, {-0.5, 0.25}});
  CHECK(eos.str() == "re,im\n1,2\n-0.5,0.25\n");
}

TEST_CASE("CSV reader rejects malformed input") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), contract_error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), contract_error);
}

TEST_CASE("JSON serializers expose the expected keys") {
  auto curve = small_curve();
  auto cj = support_curve_json(curve);
  CHECK(cj["provenance"] == "theoretical");
  CHECK(cj["theta"].size() == 12);
  CHECK(cj["lambda"].size() == 12);
  CHECK(cj["re_z"].size() == 12);
  CHECK(cj["im_z"].size() == 12);

  ConvexRegion<double> region;
  region.vertices = {{0, 0}, {1, 0}, {0, 1}};
  auto pj = polygon_json(region);
  CHECK(pj["shape"] == "polygon");
  CHECK(pj["x"].size() == 3);

  auto ej = eigenvalues_json({{1, 2}, {3, 4}});
  CHECK(ej["re"][1] == 3.0);
  CHECK(ej["im"][0] == 2.0);
}

TEST_CASE("SVG canvas emits well-formed fragments") {
  SvgCanvas canvas(-1.0, 1.0, -1.0, 1.0);
  canvas.frame();
  canvas.title("a<b");
  canvas.polyline({{0, 0}, {0.5, 0.5}, {0.5, -0.5}}, "#336699", 1.0, true, true);
  canvas.dots({{0.1, 0.1}}, "#993333", 2.0, 0.5);
  std::string svg = canvas.finish();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);

  CHECK_THROWS_AS(SvgCanvas(1.0, 1.0, 0.0, 2.0), parameter_error);
}

TEST_CASE("save_text surfaces filesystem failures") {
  CHECK_THROWS_AS(save_text("/nonexistent_nrl_dir/file.txt", "x"), parameter_error);
}

TEST_CASE("cli: sample writes one eigenvalue file per seed") {
  auto dir = fresh_dir("sample");
  int code = run_cli("sample --ensemble elliptic --n 50 --tau 0.3 --seeds 1 --out " +
                     dir.string());
  REQUIRE(code == 0);
  fs::path csv = dir / "eigenvalues_elliptic_n50_tau0.3_seed1.csv";
  REQUIRE(fs::exists(csv));
  CHECK(line_count(csv) == 51);
}

TEST_CASE("cli: sample handles the block ensemble and JSON output") {
  auto dir = fresh_dir("sample_chiral");
  int code = run_cli(
      "sample --ensemble chiral --n 20 --nu 20 --tau 0.5 --seeds 2 --format csv,json "
      "--out " +
      dir.string());
  REQUIRE(code == 0);
  fs::path csv = dir / "eigenvalues_chiral_n20_tau0.5_nu20_seed2.csv";
  REQUIRE(fs::exists(csv));
  CHECK(line_count(csv) == 61);
  auto j = nlohmann::json::parse(read_file(dir / "eigenvalues_chiral_n20_tau0.5_nu20_seed2.json"));
  CHECK(j["seed"] == 2);
  CHECK(j["re"].size() == 60);
}

TEST_CASE("cli: range writes support, polygon, and a radius") {
  auto dir = fresh_dir("range");
  int code = run_cli(
      "range --ensemble ginibre --n 40 --thetas 64 --seeds 1 --format csv,json,svg "
      "--out " +
      dir.string());
  REQUIRE(code == 0);
  fs::path support = dir / "support_ginibre_n40_tau0_seed1.csv";
  fs::path polygon = dir / "polygon_ginibre_n40_tau0_seed1.csv";
  fs::path json_path = dir / "range_ginibre_n40_tau0_seed1.json";
  REQUIRE(fs::exists(support));
  REQUIRE(fs::exists(polygon));
  REQUIRE(fs::exists(json_path));
  CHECK(fs::exists(dir / "range_ginibre_n40_tau0_seed1.svg"));
  CHECK(line_count(support) == 65);

  auto j = nlohmann::json::parse(read_file(json_path));
  double radius = j["numerical_radius"];
  CHECK(radius > 1.1);
  CHECK(radius < 1.9);
  CHECK(j["polygon"]["shape"] == "polygon");
  CHECK(j["support"]["theta"].size() == 64);

  // The written polygon is convex: consecutive edge cross products keep sign.
  std::ifstream pis(polygon);
  CsvTable table = read_csv(pis);
  REQUIRE(table.rows.size() >= 3);
  std::size_t m = table.rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    auto& a = table.rows[i];
    auto& b = table.rows[(i + 1) % m];
    auto& c = table.rows[(i + 2) % m];
    double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    CHECK(cross >= -1e-12);
  }
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  auto dir_a = fresh_dir("det_a");
  auto dir_b = fresh_dir("det_b");
  std::string args = "range --ensemble ginibre --n 40 --thetas 64 --seeds 3 --out ";
  REQUIRE(run_cli(args + dir_a.string()) == 0);
  REQUIRE(run_cli(args + dir_b.string()) == 0);
  CHECK(read_file(dir_a / "support_ginibre_n40_tau0_seed3.csv") ==
        read_file(dir_b / "support_ginibre_n40_tau0_seed3.csv"));
  CHECK(read_file(dir_a / "polygon_ginibre_n40_tau0_seed3.csv") ==
        read_file(dir_b / "polygon_ginibre_n40_tau0_seed3.csv"));
}

TEST_CASE("cli: theory for the square block limit matches the square case byte for byte") {
  auto dir = fresh_dir("theory_collapse");
  REQUIRE(run_cli("theory --ensemble chiral --tau 0.4 --alpha 0 --thetas 64 --out " +
                  dir.string()) == 0);
  REQUIRE(run_cli("theory --ensemble elliptic --tau 0.4 --alpha 0 --thetas 64 --out " +
                  dir.string()) == 0);
  CHECK(read_file(dir / "support_theory_chiral_tau0.4_alpha0.csv") ==
        read_file(dir / "support_theory_elliptic_tau0.4_alpha0.csv"));
  CHECK(read_file(dir / "droplet_theory_chiral_tau0.4_alpha0.csv") ==
        read_file(dir / "droplet_theory_elliptic_tau0.4_alpha0.csv"));
}

TEST_CASE("cli: theory support at tau 0 is the constant disc radius") {
  auto dir = fresh_dir("theory_disc");
  REQUIRE(run_cli("theory --ensemble wishart --tau 0 --alpha 0 --thetas 16 --out " +
                  dir.string()) == 0);
  std::ifstream is(dir / "support_theory_wishart_tau0_alpha0.csv");
  CsvTable table = read_csv(is);
  REQUIRE(table.rows.size() == 16);
  for (const auto& row : table.rows)
    CHECK(std::abs(row[1] - 1.6650953383927814) < 1e-9);
}

TEST_CASE("cli: converge needs at least two sizes, then reports a row per size") {
  auto dir = fresh_dir("converge");
  CHECK(run_cli("converge --ensemble elliptic --tau 0.3 --n-list 40 --seeds 1 "
                "--thetas 32 --out " +
                dir.string()) == 1);
  REQUIRE(run_cli("converge --ensemble elliptic --tau 0.3 --n-list 30,60 --seeds 1,2 "
                  "--thetas 48 --out " +
                  dir.string()) == 0);
  fs::path csv = dir / "converge_elliptic_tau0.3_alpha0.csv";
  REQUIRE(fs::exists(csv));
  std::ifstream is(csv);
  CsvTable table = read_csv(is);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][0] == 30.0);
  CHECK(table.rows[1][0] == 60.0);
}

TEST_CASE("cli: figures render to SVG") {
  auto dir = fresh_dir("figure");
  CHECK(run_cli("figure --id nosuch --out " + dir.string()) == 1);
  REQUIRE(run_cli("figure --id 4a --n 30 --thetas 48 --out " + dir.string()) == 0);
  std::string svg = read_file(dir / "figure_4a.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("cli: validate runs subsets and honors fault injection") {
  auto dir = fresh_dir("validate");
  REQUIRE(run_cli("validate --only geometry-oracle,tau0-closed-form --out " +
                  dir.string()) == 0);
  auto report = nlohmann::json::parse(read_file(dir / "validation_report.json"));
  CHECK(report["overall_pass"] == true);
  CHECK(report["checks"].size() == 2);

  CHECK(run_cli("validate --only nosuch --out " + dir.string()) == 1);
  CHECK(run_cli("validate --only discriminant-identity --tamper-quartic 1e-3 --out " +
                dir.string()) == 2);
  auto tampered = nlohmann::json::parse(read_file(dir / "validation_report.json"));
  CHECK(tampered["overall_pass"] == false);
}

TEST_CASE("cli: usage errors exit with 1, help with 0") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("sample --ensemble nosuch") == 1);
  CHECK(run_cli("sample --no-such-flag") == 1);
  CHECK(run_cli("sample --n -5") == 1);
  CHECK(run_cli("range --thetas 4") == 1);
}
