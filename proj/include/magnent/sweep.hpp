#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "magnent/entanglement.hpp"
#include "magnent/lattice.hpp"
#include "magnent/model.hpp"

namespace magnent::sweep {

enum class Mode { report, sweep_gamma, bands, grid };
enum class Format { csv, json };

struct GammaSweep {
  double min = 0.0;
  double max = 0.99;
  int steps = 100;
};

struct PathSpec {
  std::vector<std::string> labels;
  int samples = 20;
};

/// Named material. Stubs carry no couplings and require the user to supply them.
struct MaterialPreset {
  std::string name;
  std::optional<std::string> lattice;
  std::optional<Couplings> couplings;
  std::string note;
};

const std::vector<MaterialPreset>& material_presets();
const MaterialPreset& find_preset(const std::string& name);

struct SweepConfig {
  Mode mode = Mode::report;
  std::optional<std::string> preset;
  Lattice lattice;
  Couplings couplings;
  std::optional<Vec3> k;
  std::optional<PathSpec> path;
  std::optional<int> grid_n;
  std::optional<GammaSweep> gamma_sweep;
  std::vector<double> dj_values;
  Format format = Format::csv;
  std::string output_path;  // empty: stdout
  unsigned threads = 1;
};

Mode parse_mode(const std::string& text);
std::string mode_name(Mode mode);

/// Builds a config from JSON (keys: mode, preset, lattice, J_meV, D_meV, K_meV, S, k, path,
/// grid, gamma_sweep, dj_values, output, threads). Throws ValidationError on bad input.
SweepConfig parse_config(const nlohmann::json& doc);

/// One output line: a hierarchy report plus its sweep coordinates.
struct OutputRow {
  std::size_t k_index = 0;
  std::optional<double> path_s;
  EntanglementReport report;
};

/// Fixed CSV column order; JSON rows use the same keys.
const std::vector<std::string>& columns();

/// Evaluates fn(i) for i in [0, n) on `threads` workers and returns results in index order.
std::vector<OutputRow> parallel_rows(std::size_t n, unsigned threads,
                                     const std::function<OutputRow(std::size_t)>& fn);

OutputRow run_report(const SweepConfig& config);
std::vector<OutputRow> run_sweep_gamma(const SweepConfig& config);
std::vector<OutputRow> run_bands(const SweepConfig& config);
std::vector<OutputRow> run_grid(const SweepConfig& config);
std::vector<OutputRow> run(const SweepConfig& config);

/// Warnings raised while validating the model(s) a config will run.
std::vector<std::string> model_warnings(const SweepConfig& config);

std::string format_number(double x);  // %.12g
nlohmann::json row_to_json(const OutputRow& row);
void write_csv(std::ostream& out, const std::vector<OutputRow>& rows);
void write_json(std::ostream& out, const SweepConfig& config, const std::vector<OutputRow>& rows);

}  // namespace magnent::sweep
