#include <cctype>
// magnent: magnon entanglement hierarchy, dispersions and EPR diagnostics.
//
//   magnent report      --preset SrMnO3 --k 3.14159265,0,0
//   magnent sweep-gamma --config fig3.json --out fig3.csv --threads auto
//   magnent bands       --preset SrMnO3 --path G,X,M,R,G --samples 50
//   magnent grid        --config grid.json --format json
//   magnent presets
//
// Exit codes: 0 success (diverged rows included), 2 invalid config, 1 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "magnent/errors.hpp"
#include "magnent/sweep.hpp"

using nlohmann::json;
namespace sw = magnent::sweep;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_config = 2;

struct Options {
  std::string config_file;
  std::string preset;
  std::string out;
  std::string format;
  std::string threads;
  std::string lattice;
  std::optional<double> J, D, K, S;
  std::vector<std::string> k;
  std::vector<std::string> path;
  std::optional<int> samples;
  std::optional<int> grid_n;
  std::optional<double> gamma_min, gamma_max;
  std::optional<int> gamma_steps;
  std::vector<double> dj;
};

json load_config(const std::string& file) {
  if (file.empty()) return json::object();
  std::ifstream in(file);
  if (!in) throw magnent::ValidationError("cannot open config file '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw magnent::ValidationError("config file '" + file + "': " + e.what());
  }
}

json build_document(const Options& o, sw::Mode mode) {
  json doc = load_config(o.config_file);
  if (!doc.is_object()) throw magnent::ValidationError("config must be a JSON object");
  doc["mode"] = sw::mode_name(mode);
  if (!o.preset.empty()) doc["preset"] = o.preset;
  if (!o.lattice.empty()) doc["lattice"] = o.lattice;
  if (o.J) doc["J_meV"] = *o.J;
  if (o.D) doc["D_meV"] = *o.D;
  if (o.K) doc["K_meV"] = *o.K;
  if (o.S) doc["S"] = *o.S;
  if (o.k.size() == 1 && !o.k[0].empty() && std::isalpha(static_cast<unsigned char>(o.k[0][0]))) {
    doc["k"] = o.k[0];
  } else if (!o.k.empty()) {
    json coords = json::array();
    for (const auto& c : o.k) {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != c.size()) throw magnent::ValidationError("bad --k component '" + c + "'");
      coords.push_back(x);
    }
    doc["k"] = coords;
  }
  if (!o.path.empty()) doc["path"]["labels"] = o.path;
  if (o.samples) doc["path"]["samples"] = *o.samples;
  if (o.grid_n) doc["grid"]["n"] = *o.grid_n;
  if (o.gamma_min) doc["gamma_sweep"]["min"] = *o.gamma_min;
  if (o.gamma_max) doc["gamma_sweep"]["max"] = *o.gamma_max;
  if (o.gamma_steps) doc["gamma_sweep"]["steps"] = *o.gamma_steps;
  if (!o.dj.empty()) doc["dj_values"] = o.dj;
  if (!o.out.empty()) doc["output"]["path"] = o.out;
  if (!o.format.empty()) doc["output"]["format"] = o.format;
  if (!o.threads.empty()) {
    if (o.threads == "auto") {
      doc["threads"] = "auto";
    } else {
      try {
        std::size_t used = 0;
        const long n = std::stol(o.threads, &used);
        if (used != o.threads.size()) throw std::invalid_argument("trailing characters");
        doc["threads"] = n;
      } catch (const std::exception&) {
        throw magnent::ValidationError("--threads must be a positive integer or 'auto'");
      }
    }
  }
  // A single report defaults to JSON.
  if (mode == sw::Mode::report && !(doc.contains("output") && doc["output"].contains("format")))
    doc["output"]["format"] = "json";
  return doc;
}

void emit(const sw::SweepConfig& cfg, const std::vector<sw::OutputRow>& rows, std::ostream& out) {
  if (cfg.format == sw::Format::csv) {
    sw::write_csv(out, rows);
  } else if (cfg.mode == sw::Mode::report) {
    out << sw::row_to_json(rows.front()).dump(2) << '\n';
  } else {
    sw::write_json(out, cfg, rows);
  }
}

int run_mode(const Options& o, sw::Mode mode) {
  const sw::SweepConfig cfg = sw::parse_config(build_document(o, mode));
  for (const auto& w : sw::model_warnings(cfg)) std::cerr << "warning: " << w << '\n';
  const auto rows = sw::run(cfg);
  if (cfg.output_path.empty()) {
    emit(cfg, rows, std::cout);
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) throw magnent::ValidationError("cannot write '" + cfg.output_path + "'");
    emit(cfg, rows, file);
  }
  return exit_ok;
}

int list_presets(const Options& o) {
  json doc;
  for (const auto& name : magnent::builtin_lattice_names()) {
    const auto lat = magnent::lattice_by_name(name);
    json points = json::object();
    for (const auto& [label, k] : lat.symmetry_points) points[label] = k;
    doc["lattices"].push_back({{"name", name}, {"z", lat.z()}, {"symmetry_points", points}});
  }
  for (const auto& p : sw::material_presets()) {
    json m{{"name", p.name}, {"note", p.note}};
    m["lattice"] = p.lattice ? json(*p.lattice) : json(nullptr);
    if (p.couplings)
      m["couplings"] = {{"J_meV", p.couplings->J}, {"D_meV", p.couplings->D},
                        {"K_meV", p.couplings->K}, {"S", p.couplings->S}};
    else
      m["couplings"] = nullptr;
    doc["materials"].push_back(m);
  }
  if (o.format == "json") {
    std::cout << doc.dump(2) << '\n';
    return exit_ok;
  }
  std::cout << "lattices:\n";
  for (const auto& l : doc["lattices"]) {
    std::cout << "  " << l["name"].get<std::string>() << "  z=" << l["z"].get<int>() << "  points:";
    for (const auto& [label, k] : l["symmetry_points"].items()) std::cout << ' ' << label;
    std::cout << '\n';
  }
  std::cout << "materials:\n";
  for (const auto& m : doc["materials"]) {
    std::cout << "  " << m["name"].get<std::string>();
    if (!m["couplings"].is_null())
      std::cout << "  " << m["lattice"].get<std::string>() << " J=" << m["couplings"]["J_meV"].get<double>()
                << " meV D=" << m["couplings"]["D_meV"].get<double>() << " meV S=" << m["couplings"]["S"].get<double>();
    std::cout << "  (" << m["note"].get<std::string>() << ")\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnon entanglement hierarchy for bipartite antiferromagnets"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_file, "JSON config file");
    sub->add_option("--preset", o.preset, "material preset (see 'presets')");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker threads: integer or 'auto'");
    sub->add_option("--lattice", o.lattice, "chain | square | simple_cubic | honeycomb");
    sub->add_option("--J", o.J, "exchange J in meV");
    sub->add_option("--D", o.D, "DM strength D in meV");
    sub->add_option("--K", o.K, "uniaxial anisotropy K in meV");
    sub->add_option("--S", o.S, "spin quantum number");
  };

  auto* report = app.add_subcommand("report", "full hierarchy at one k-point, printed as JSON");
  add_common(report);
  report->add_option("--k", o.k, "k-point: comma separated coordinates or a symmetry label")->delimiter(',');

  auto* sweep_gamma = app.add_subcommand("sweep-gamma", "entropies over |gamma| for each D/J");
  add_common(sweep_gamma);
  sweep_gamma->add_option("--gamma-min", o.gamma_min);
  sweep_gamma->add_option("--gamma-max", o.gamma_max);
  sweep_gamma->add_option("--steps", o.gamma_steps);
  sweep_gamma->add_option("--dj", o.dj, "D/J values, comma separated")->delimiter(',');

  auto* bands = app.add_subcommand("bands", "dispersion and entropy along a k-path");
  add_common(bands);
  bands->add_option("--path", o.path, "symmetry labels, comma separated")->delimiter(',');
  bands->add_option("--samples", o.samples, "intervals per segment");

  auto* grid = app.add_subcommand("grid", "hierarchy over a uniform BZ grid");
  add_common(grid);
  grid->add_option("--n", o.grid_n, "points per axis");

  auto* presets = app.add_subcommand("presets", "list built-in lattices and materials");
  presets->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*presets) return list_presets(o);
    if (*report) return run_mode(o, sw::Mode::report);
    if (*sweep_gamma) return run_mode(o, sw::Mode::sweep_gamma);
    if (*bands) return run_mode(o, sw::Mode::bands);
    if (*grid) return run_mode(o, sw::Mode::grid);
  } catch (const magnent::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}
