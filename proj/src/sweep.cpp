#include "magnent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "magnent/errors.hpp"

namespace magnent::sweep {

using nlohmann::json;

const std::vector<MaterialPreset>& material_presets() {
  static const std::vector<MaterialPreset> presets{
      {"SrMnO3", "simple_cubic", Couplings{17.1, 0.0, 0.0, 1.5},
       "cubic perovskite, nearest-neighbour Heisenberg exchange only"},
      {"La2CuO4", std::nullopt, std::nullopt, "DM antiferromagnet; supply lattice, J_meV, D_meV"},
      {"FeBO3", std::nullopt, std::nullopt, "DM antiferromagnet; supply lattice, J_meV, D_meV"},
      {"CoCO3", std::nullopt, std::nullopt, "DM antiferromagnet; supply lattice, J_meV, D_meV"},
  };
  return presets;
}

const MaterialPreset& find_preset(const std::string& name) {
  for (const auto& p : material_presets())
    if (p.name == name) return p;
  throw ValidationError("unknown preset '" + name + "'");
}

Mode parse_mode(const std::string& text) {
  if (text == "report") return Mode::report;
  if (text == "sweep_gamma" || text == "sweep-gamma") return Mode::sweep_gamma;
  if (text == "bands") return Mode::bands;
  if (text == "grid") return Mode::grid;
  throw ValidationError("unknown mode '" + text + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::report: return "report";
    case Mode::sweep_gamma: return "sweep_gamma";
    case Mode::bands: return "bands";
    case Mode::grid: return "grid";
  }
  return "report";
}

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

double get_number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ValidationError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

Vec3 parse_vec(const json& v, const char* key) {
  if (!v.is_array() || v.empty() || v.size() > 3)
    throw ValidationError(std::string("config key '") + key + "' must be an array of 1-3 numbers");
  Vec3 out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ValidationError(std::string("config key '") + key + "' must contain numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

Lattice parse_lattice(const json& v) {
  if (v.is_string()) return lattice_by_name(v.get<std::string>());
  if (!v.is_object()) throw ValidationError("'lattice' must be a name or an object");
  std::vector<Vec3> neighbors;
  if (!v.contains("neighbors") || !v.at("neighbors").is_array())
    throw ValidationError("custom lattice needs a 'neighbors' array");
  for (const auto& d : v.at("neighbors")) neighbors.push_back(parse_vec(d, "neighbors"));
  std::map<std::string, Vec3> points;
  if (v.contains("symmetry_points")) {
    if (!v.at("symmetry_points").is_object()) throw ValidationError("'symmetry_points' must be an object");
    for (const auto& [label, k] : v.at("symmetry_points").items()) points[label] = parse_vec(k, "symmetry_points");
  }
  std::vector<Vec3> reciprocal;
  if (v.contains("reciprocal"))
    for (const auto& b : v.at("reciprocal")) reciprocal.push_back(parse_vec(b, "reciprocal"));
  const int dimension = v.contains("dimension") ? get_int(v, "dimension") : 3;
  const std::string name = v.contains("name") ? get_as<std::string>(v.at("name"), "name") : "custom";
  return make_custom_lattice(name, std::move(neighbors), std::move(points), std::move(reciprocal), dimension);
}

Model model_for(const SweepConfig& config, std::optional<double> dj = std::nullopt) {
  Couplings c = config.couplings;
  if (dj) c.D = *dj * c.J;
  return Model::validate(config.lattice, c);
}

OutputRow make_row(std::size_t index, EntanglementReport rep, std::optional<double> path_s = std::nullopt) {
  OutputRow row;
  row.k_index = index;
  row.path_s = path_s;
  row.report = std::move(rep);
  return row;
}

}  // namespace

SweepConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  static const std::vector<std::string> known{"mode", "preset", "lattice", "J_meV", "D_meV", "K_meV", "S",
                                              "k", "path", "grid", "gamma_sweep", "dj_values", "output",
                                              "threads"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ValidationError("unknown config key '" + key + "'");

  SweepConfig cfg;
  if (doc.contains("mode")) cfg.mode = parse_mode(get_as<std::string>(doc.at("mode"), "mode"));

  std::optional<std::string> lattice_name;
  std::optional<double> J, D, K, S;
  if (doc.contains("preset")) {
    cfg.preset = get_as<std::string>(doc.at("preset"), "preset");
    const MaterialPreset& p = find_preset(*cfg.preset);
    lattice_name = p.lattice;
    if (p.couplings) {
      J = p.couplings->J;
      D = p.couplings->D;
      K = p.couplings->K;
      S = p.couplings->S;
    }
  }
  if (doc.contains("J_meV")) J = get_number(doc, "J_meV");
  if (doc.contains("D_meV")) D = get_number(doc, "D_meV");
  if (doc.contains("K_meV")) K = get_number(doc, "K_meV");
  if (doc.contains("S")) S = get_number(doc, "S");
  if (!J) {
    throw ValidationError(cfg.preset ? "preset '" + *cfg.preset + "' has no built-in couplings; set J_meV"
                                     : std::string("J_meV is required when no preset is given"));
  }
  cfg.couplings = Couplings{*J, D.value_or(0.0), K.value_or(0.0), S.value_or(0.5)};

  if (doc.contains("lattice")) {
    cfg.lattice = parse_lattice(doc.at("lattice"));
  } else if (lattice_name) {
    cfg.lattice = lattice_by_name(*lattice_name);
  } else if (cfg.preset) {
    throw ValidationError("preset '" + *cfg.preset + "' has no built-in lattice; set 'lattice'");
  } else {
    cfg.lattice = make_lattice(LatticeKind::simple_cubic);
  }

  if (doc.contains("k")) {
    const json& k = doc.at("k");
    if (k.is_string()) {
      const auto label = k.get<std::string>();
      auto it = cfg.lattice.symmetry_points.find(label);
      if (it == cfg.lattice.symmetry_points.end())
        throw ValidationError("unknown symmetry point '" + label + "' for lattice " + cfg.lattice.name);
      cfg.k = it->second;
    } else {
      cfg.k = parse_vec(k, "k");
    }
  }
  if (doc.contains("path")) {
    const json& p = doc.at("path");
    if (!p.is_object() || !p.contains("labels")) throw ValidationError("'path' needs a 'labels' array");
    PathSpec spec;
    spec.labels = get_as<std::vector<std::string>>(p.at("labels"), "path.labels");
    if (p.contains("samples")) spec.samples = get_int(p, "samples");
    cfg.path = spec;
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (!g.is_object() || !g.contains("n")) throw ValidationError("'grid' needs an integer 'n'");
    cfg.grid_n = get_int(g, "n");
  }
  if (doc.contains("gamma_sweep")) {
    const json& g = doc.at("gamma_sweep");
    if (!g.is_object()) throw ValidationError("'gamma_sweep' must be an object");
    GammaSweep spec;
    if (g.contains("min")) spec.min = get_number(g, "min");
    if (g.contains("max")) spec.max = get_number(g, "max");
    if (g.contains("steps")) spec.steps = get_int(g, "steps");
    cfg.gamma_sweep = spec;
  }
  if (doc.contains("dj_values")) cfg.dj_values = get_as<std::vector<double>>(doc.at("dj_values"), "dj_values");

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ValidationError("'output' must be an object");
    if (o.contains("format")) {
      const auto f = get_as<std::string>(o.at("format"), "output.format");
      if (f == "csv") cfg.format = Format::csv;
      else if (f == "json") cfg.format = Format::json;
      else throw ValidationError("output.format must be csv or json");
    }
    if (o.contains("path")) cfg.output_path = get_as<std::string>(o.at("path"), "output.path");
  }
  if (doc.contains("threads")) {
    const json& t = doc.at("threads");
    if (t.is_string() && t.get<std::string>() == "auto") {
      cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    } else if (t.is_number_integer() && t.get<long long>() >= 1) {
      cfg.threads = static_cast<unsigned>(t.get<long long>());
    } else {
      throw ValidationError("'threads' must be a positive integer or \"auto\"");
    }
  }

  // Exactly the sweep spec belonging to the mode.
  const bool has_k = cfg.k.has_value(), has_path = cfg.path.has_value(), has_grid = cfg.grid_n.has_value(),
             has_gamma = cfg.gamma_sweep.has_value();
  const auto require_only = [&](bool mine, const char* what) {
    if (!mine) throw ValidationError(std::string("mode ") + mode_name(cfg.mode) + " needs '" + what + "'");
    if (int(has_k) + int(has_path) + int(has_grid) + int(has_gamma) != 1)
      throw ValidationError(std::string("mode ") + mode_name(cfg.mode) + " takes only '" + what +
                            "' among k/path/grid/gamma_sweep");
  };
  switch (cfg.mode) {
    case Mode::report: require_only(has_k, "k"); break;
    case Mode::bands:
      require_only(has_path, "path");
      if (cfg.path->samples < 1) throw ValidationError("path.samples must be >= 1");
      break;
    case Mode::grid:
      require_only(has_grid, "grid");
      if (*cfg.grid_n < 1) throw ValidationError("grid.n must be >= 1");
      break;
    case Mode::sweep_gamma: {
      require_only(has_gamma, "gamma_sweep");
      const GammaSweep& g = *cfg.gamma_sweep;
      if (g.steps < 2) throw ValidationError("gamma_sweep.steps must be >= 2");
      if (!(g.min < g.max)) throw ValidationError("gamma_sweep needs min < max");
      if (g.min < 0.0) throw ValidationError("gamma_sweep.min must be >= 0 (|gamma| abscissa)");
      break;
    }
  }
  if (!cfg.dj_values.empty() && cfg.mode != Mode::sweep_gamma)
    throw ValidationError("dj_values is only used by sweep_gamma; set D_meV instead");
  for (double dj : cfg.dj_values)
    if (!(dj >= 0.0) || !std::isfinite(dj)) throw ValidationError("dj_values must be finite and >= 0");

  // Surface coupling errors at parse time.
  for (double dj : cfg.dj_values) model_for(cfg, dj);
  model_for(cfg);
  return cfg;
}

std::vector<std::string> model_warnings(const SweepConfig& config) {
  std::vector<std::string> out;
  auto collect = [&](const Model& m) { out.insert(out.end(), m.warnings().begin(), m.warnings().end()); };
  if (config.mode == Mode::sweep_gamma && !config.dj_values.empty()) {
    for (double dj : config.dj_values) collect(model_for(config, dj));
  } else {
    collect(model_for(config));
  }
  return out;
}

const std::vector<std::string>& columns() {
  static const std::vector<std::string> cols{
      "k_index",    "kx",         "ky",        "kz",          "path_s",           "abs_gamma",
      "gamma_re",   "gamma_im",   "eps_h_meV", "eps_full_meV", "E0_ab_bits",      "E_alphabeta_bits",
      "E_ab_bits",  "E_dm_ab_bits", "delta",   "epr_uncertainty", "squeezed",     "diverged"};
  return cols;
}

std::vector<OutputRow> parallel_rows(std::size_t n, unsigned threads,
                                     const std::function<OutputRow(std::size_t)>& fn) {
  std::vector<OutputRow> rows(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            rows[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

OutputRow run_report(const SweepConfig& config) {
  if (!config.k) throw ValidationError("report needs a k-point");
  const Model model = model_for(config);
  return make_row(0, hierarchy(model, KPoint{*config.k, {}}));
}

std::vector<OutputRow> run_sweep_gamma(const SweepConfig& config) {
  if (!config.gamma_sweep) throw ValidationError("sweep_gamma needs gamma_sweep");
  const GammaSweep g = *config.gamma_sweep;
  std::vector<Model> models;
  if (config.dj_values.empty()) {
    models.push_back(model_for(config));
  } else {
    for (double dj : config.dj_values) models.push_back(model_for(config, dj));
  }
  const auto steps = static_cast<std::size_t>(g.steps);
  const double step = (g.max - g.min) / static_cast<double>(steps - 1);
  return parallel_rows(models.size() * steps, config.threads, [&](std::size_t i) {
    const Model& model = models[i / steps];
    const std::size_t j = i % steps;
    const double abs_gamma = j + 1 == steps ? g.max : g.min + static_cast<double>(j) * step;
    return make_row(i, hierarchy_at_gamma(model, cplx{abs_gamma, 0.0}));
  });
}

std::vector<OutputRow> run_bands(const SweepConfig& config) {
  if (!config.path) throw ValidationError("bands needs a path");
  const Model model = model_for(config);
  const KPath path = build_kpath(config.lattice, config.path->labels, config.path->samples);
  return parallel_rows(path.points.size(), config.threads, [&](std::size_t i) {
    return make_row(i, hierarchy(model, path.points[i]), path.path_s[i]);
  });
}

std::vector<OutputRow> run_grid(const SweepConfig& config) {
  if (!config.grid_n) throw ValidationError("grid needs grid.n");
  const Model model = model_for(config);
  const std::vector<KPoint> grid = build_bz_grid(config.lattice, *config.grid_n);
  return parallel_rows(grid.size(), config.threads,
                       [&](std::size_t i) { return make_row(i, hierarchy(model, grid[i])); });
}

std::vector<OutputRow> run(const SweepConfig& config) {
  switch (config.mode) {
    case Mode::report: return {run_report(config)};
    case Mode::sweep_gamma: return run_sweep_gamma(config);
    case Mode::bands: return run_bands(config);
    case Mode::grid: return run_grid(config);
  }
  return {};
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

// Column values in columns() order; nullopt renders as missing.
struct Cell {
  enum class Kind { number, integer, boolean, missing } kind = Kind::missing;
  double number = 0.0;
  std::size_t integer = 0;
  bool boolean = false;
};

std::vector<Cell> cells(const OutputRow& row) {
  const EntanglementReport& r = row.report;
  auto num = [](std::optional<double> v) {
    Cell c;
    if (v) {
      c.kind = Cell::Kind::number;
      c.number = *v;
    }
    return c;
  };
  auto flag = [](bool b) {
    Cell c;
    c.kind = Cell::Kind::boolean;
    c.boolean = b;
    return c;
  };
  Cell index;
  index.kind = Cell::Kind::integer;
  index.integer = row.k_index;
  std::optional<double> kx, ky, kz;
  if (r.k) {
    kx = r.k->coords[0];
    ky = r.k->coords[1];
    kz = r.k->coords[2];
  }
  return {index,
          num(kx),
          num(ky),
          num(kz),
          num(row.path_s),
          num(std::abs(r.gamma)),
          num(r.gamma.real()),
          num(r.gamma.imag()),
          num(r.eps_heisenberg),
          num(r.eps_full),
          num(r.E0_ab),
          num(r.E_alphabeta),
          num(r.E_ab),
          num(r.E_dm_ab),
          num(r.delta),
          num(r.epr_uncertainty),
          flag(r.squeezed),
          flag(r.diverged)};
}

}  // namespace

nlohmann::json row_to_json(const OutputRow& row) {
  json obj = json::object();
  const auto& cols = columns();
  const auto values = cells(row);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const Cell& c = values[i];
    switch (c.kind) {
      case Cell::Kind::number: obj[cols[i]] = c.number; break;
      case Cell::Kind::integer: obj[cols[i]] = c.integer; break;
      case Cell::Kind::boolean: obj[cols[i]] = c.boolean; break;
      case Cell::Kind::missing: obj[cols[i]] = nullptr; break;
    }
  }
  return obj;
}

void write_csv(std::ostream& out, const std::vector<OutputRow>& rows) {
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : rows) {
    const auto values = cells(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ',';
      const Cell& c = values[i];
      switch (c.kind) {
        case Cell::Kind::number: out << format_number(c.number); break;
        case Cell::Kind::integer: out << c.integer; break;
        case Cell::Kind::boolean: out << (c.boolean ? "true" : "false"); break;
        case Cell::Kind::missing: break;
      }
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepConfig& config, const std::vector<OutputRow>& rows) {
  json doc;
  doc["mode"] = mode_name(config.mode);
  json meta;
  meta["lattice"] = config.lattice.name;
  meta["z"] = config.lattice.z();
  meta["J_meV"] = config.couplings.J;
  meta["D_meV"] = config.couplings.D;
  meta["K_meV"] = config.couplings.K;
  meta["S"] = config.couplings.S;
  meta["kappa"] = anisotropy_factor(config.couplings.J, config.couplings.K, config.lattice.z());
  if (config.preset) meta["preset"] = *config.preset;
  if (config.mode == Mode::sweep_gamma) {
    meta["dj_values"] = config.dj_values;
    meta["row_order"] = "outer D/J, inner |gamma|";
  }
  if (config.mode == Mode::grid)
    meta["grid_convention"] = "gamma-centred: fractional coordinate (j - floor(n/2))/n per reciprocal vector";
  doc["meta"] = meta;
  doc["columns"] = columns();
  json list = json::array();
  for (const auto& row : rows) list.push_back(row_to_json(row));
  doc["rows"] = std::move(list);
  out << doc.dump(2) << '\n';
}

}  // namespace magnent::sweep
