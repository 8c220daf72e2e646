#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "magnent/errors.hpp"
#include "magnent/sweep.hpp"

using namespace magnent;
using namespace magnent::sweep;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
const char* const header =
    "k_index,kx,ky,kz,path_s,abs_gamma,gamma_re,gamma_im,eps_h_meV,eps_full_meV,E0_ab_bits,"
    "E_alphabeta_bits,E_ab_bits,E_dm_ab_bits,delta,epr_uncertainty,squeezed,diverged";

std::string csv(const std::vector<OutputRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "magnent_test_sweep";
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(MAGNENT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config parsing and presets") {
  const SweepConfig cfg = parse_config(json{{"mode", "report"}, {"preset", "SrMnO3"}, {"k", "X"}});
  CHECK(cfg.lattice.name == "simple_cubic");
  CHECK(cfg.couplings.J == 17.1);
  CHECK(cfg.couplings.S == 1.5);
  CHECK(cfg.k->at(0) == doctest::Approx(pi));

  const SweepConfig over = parse_config(json{{"mode", "report"}, {"preset", "SrMnO3"}, {"D_meV", 2.0}, {"k", {0, 0, 0}}});
  CHECK(over.couplings.D == 2.0);

  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"preset", "FeBO3"}, {"k", {0}}}), ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"preset", "FeBO3"}, {"J_meV", 1.0}, {"k", {0}}}),
                  ValidationError);
  const SweepConfig stub = parse_config(
      json{{"mode", "report"}, {"preset", "FeBO3"}, {"J_meV", 1.0}, {"lattice", "square"}, {"k", {0, 0}}});
  CHECK(stub.lattice.z() == 4);

  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"k", {0}}}), ValidationError);  // no J
  CHECK_THROWS_AS(parse_config(json{{"mode", "nonsense"}, {"J_meV", 1}}), ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"J_meV", 1}, {"k", {0, 0, 0}}, {"grid", {{"n", 2}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "grid"}, {"J_meV", 1}, {"grid", {{"n", 0}}}}), ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "sweep_gamma"}, {"J_meV", 1},
                                    {"gamma_sweep", {{"min", 0.5}, {"max", 0.5}, {"steps", 10}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "sweep_gamma"}, {"J_meV", 1},
                                    {"gamma_sweep", {{"min", 0.0}, {"max", 0.5}, {"steps", 1}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"J_meV", -1}, {"k", {0}}}), ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"J_meV", 1}, {"k", {0}}, {"bogus", 1}}), ValidationError);
  CHECK_THROWS_AS(parse_config(json{{"mode", "report"}, {"J_meV", 1}, {"k", {0}}, {"threads", 0}}), ValidationError);
}

TEST_CASE("custom lattice from config") {
  const json doc{{"mode", "bands"},
                 {"J_meV", 1.0},
                 {"lattice",
                  {{"name", "ladder"},
                   {"neighbors", {{1, 0, 0}, {-1, 0, 0}}},
                   {"symmetry_points", {{"X", {pi, 0, 0}}}},
                   {"dimension", 1}}},
                 {"path", {{"labels", {"G", "X"}}, {"samples", 4}}}};
  const SweepConfig cfg = parse_config(doc);
  const auto rows = run(cfg);
  CHECK(rows.size() == 5);
  CHECK(rows.back().report.gamma.real() == doctest::Approx(-1.0));
}

TEST_CASE("report rows") {
  const auto row = run_report(parse_config(json{{"mode", "report"}, {"preset", "SrMnO3"}, {"k", {pi, 0, 0}}}));
  CHECK(row.report.gamma.real() == doctest::Approx(1.0 / 3.0));
  CHECK(*row.report.eps_heisenberg == doctest::Approx(145.10).epsilon(1e-4));

  const auto zero = run_report(
      parse_config(json{{"mode", "report"}, {"J_meV", 1.0}, {"lattice", "honeycomb"}, {"k", "K"}}));
  CHECK(*zero.report.E0_ab == doctest::Approx(0.0));
  CHECK(*zero.report.E_ab == doctest::Approx(0.0));
  CHECK(*zero.report.E_alphabeta == 0.0);

  const auto anchor = run_report(parse_config(
      json{{"mode", "report"}, {"J_meV", 1.0}, {"D_meV", 0.1}, {"K_meV", 0.015}, {"k", {0, 0, 0}}}));
  CHECK(std::abs(*anchor.report.E_ab - 8.094) < 0.02);

  const json j = row_to_json(anchor);
  CHECK(j.size() == columns().size());
  CHECK(j["path_s"].is_null());
  CHECK(j["diverged"] == false);
}

TEST_CASE("gamma sweep ordering and size") {
  const SweepConfig cfg = parse_config(json{{"mode", "sweep_gamma"},
                                            {"J_meV", 1.0},
                                            {"gamma_sweep", {{"min", 0.0}, {"max", 0.99}, {"steps", 100}}},
                                            {"dj_values", {0.0, 0.25, 0.5}},
                                            {"threads", 3}});
  const auto rows = run_sweep_gamma(cfg);
  REQUIRE(rows.size() == 300);
  CHECK(std::abs(rows[0].report.gamma) == 0.0);
  CHECK(std::abs(rows[99].report.gamma) == 0.99);
  CHECK(std::abs(rows[100].report.gamma) == 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].k_index == i);
  // D/J = 0 block: no DM entanglement; D/J = 0.5 block diverges past |gamma|^2 = 0.8
  CHECK(*rows[50].report.E_alphabeta == 0.0);
  CHECK(rows[299].report.diverged);
  CHECK(*rows[250].report.E_ab > *rows[150].report.E_ab);
  CHECK(*rows[150].report.E_ab > *rows[50].report.E_ab);
}

TEST_CASE("bands along G-X-M-R-G for SrMnO3") {
  const SweepConfig cfg = parse_config(json{{"mode", "bands"},
                                            {"preset", "SrMnO3"},
                                            {"path", {{"labels", {"G", "X", "M", "R", "G"}}, {"samples", 10}}}});
  const auto rows = run_bands(cfg);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0].report.diverged);
  CHECK(*rows[0].report.eps_heisenberg == 0.0);
  CHECK(*rows[10].report.eps_heisenberg == doctest::Approx(145.098).epsilon(1e-5));
  CHECK(rows[30].report.diverged);  // R: gamma = -1
  CHECK(rows[40].report.diverged);
  for (std::size_t i = 1; i < 10; ++i) CHECK_FALSE(rows[i].report.diverged);
  CHECK(*rows[40].path_s > *rows[39].path_s);

  const auto chain = run_bands(parse_config(
      json{{"mode", "bands"}, {"J_meV", 1.0}, {"lattice", "chain"}, {"path", {{"labels", {"G", "X"}}, {"samples", 20}}}}));
  for (std::size_t i = 0; i < chain.size(); ++i)
    CHECK(chain[i].report.gamma.real() == doctest::Approx(std::cos(chain[i].report.k->coords[0])));
  for (std::size_t i = 1; i <= 10; ++i)
    CHECK(*chain[i].report.eps_heisenberg > *chain[i - 1].report.eps_heisenberg);

  CHECK_THROWS_AS(run_bands(parse_config(json{{"mode", "bands"}, {"J_meV", 1.0}, {"path", {{"labels", {"G", "Q"}}}}})),
                  ValidationError);
}

TEST_CASE("grid is symmetric and thread-independent") {
  json doc{{"mode", "grid"}, {"J_meV", 1.0}, {"grid", {{"n", 8}}}, {"threads", 1}};
  const auto serial = run_grid(parse_config(doc));
  REQUIRE(serial.size() == 512);
  doc["threads"] = 8;
  const auto parallel = run_grid(parse_config(doc));
  CHECK(csv(serial) == csv(parallel));

  // k -> -k: index j -> (n - j) mod n on a gamma-centred even grid
  auto index = [](int a, int b, int c) { return std::size_t((a * 8 + b) * 8 + c); };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        const auto& p = serial[index(a, b, c)].report;
        const auto& q = serial[index((8 - a) % 8, (8 - b) % 8, (8 - c) % 8)].report;
        CHECK(p.diverged == q.diverged);
        if (p.E0_ab && q.E0_ab) CHECK(std::abs(*p.E0_ab - *q.E0_ab) < 1e-12);
      }
}

TEST_CASE("csv format") {
  const auto rows = run_sweep_gamma(parse_config(json{{"mode", "sweep_gamma"},
                                                      {"J_meV", 1.0},
                                                      {"gamma_sweep", {{"min", 0.5}, {"max", 1.0}, {"steps", 2}}}}));
  const std::string text = csv(rows);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == header);
  std::getline(in, line);
  CHECK(line.rfind("0,,,,,0.5,0.5,0,", 0) == 0);
  CHECK(line.find(",false,false") != std::string::npos);
  std::getline(in, line);
  // |gamma| = 1: stage 1 diverges, dispersions still defined
  CHECK(line == "1,,,,,1,1,0,0,0,,,,,,,false,true");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(145.09831149947956) == "145.098311499");
}

TEST_CASE("cli exit codes and determinism") {
  const fs::path dir = scratch();
  CHECK(cli("presets") == 0);
  CHECK(cli("report --preset SrMnO3 --k 3.141592653589793,0,0") == 0);
  CHECK(cli("report --J 1 --k 0,0,0") == 0);  // diverged but successful
  CHECK(cli("report --preset SrMnO3 --k X") == 0);
  CHECK(cli("report --preset SrMnO3 --k 1,a,0") == 2);
  CHECK(cli("report --preset SrMnO3") == 2);
  CHECK(cli("grid --J 1 --n 0") == 2);
  CHECK(cli("bands --preset SrMnO3 --path G,Q") == 2);
  CHECK(cli("sweep-gamma --J 1 --gamma-min 0.3 --gamma-max 0.3 --steps 10") == 2);
  CHECK(cli("report --config /nonexistent/file.json --k 0") == 2);
  CHECK(cli("frobnicate") == 2);

  const fs::path cfg = dir / "bands.json";
  std::ofstream(cfg) << R"({"preset": "SrMnO3", "path": {"labels": ["G","X","M","R","G"], "samples": 25}})";
  const fs::path a = dir / "a.csv", b = dir / "b.csv", j = dir / "c.json";
  CHECK(cli("bands --config " + cfg.string() + " --threads 1 --out " + a.string()) == 0);
  CHECK(cli("bands --config " + cfg.string() + " --threads 8 --out " + b.string()) == 0);
  CHECK(cli("bands --config " + cfg.string() + " --threads auto --format json --out " + j.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind(header, 0) == 0);
  const json doc = json::parse(slurp(j));
  CHECK(doc["rows"].size() == 101);
  CHECK(doc["rows"][0]["E0_ab_bits"].is_null());
}
