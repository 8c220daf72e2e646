#include "magnent/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnent/errors.hpp"

namespace magnent {

namespace {

constexpr double pi = std::numbers::pi;

bool is_finite(const Vec3& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool contains_negation(const std::vector<Vec3>& set, const Vec3& v) {
  return std::any_of(set.begin(), set.end(), [&](const Vec3& w) {
    return w[0] == -v[0] && w[1] == -v[1] && w[2] == -v[2];
  });
}

bool closed_under_inversion(const std::vector<Vec3>& set) {
  return std::all_of(set.begin(), set.end(),
                     [&](const Vec3& v) { return contains_negation(set, v); });
}

std::vector<Vec3> cubic_reciprocal(int dimension) {
  std::vector<Vec3> out;
  for (int d = 0; d < dimension; ++d) {
    Vec3 b{0.0, 0.0, 0.0};
    b[d] = 2.0 * pi;
    out.push_back(b);
  }
  return out;
}

}  // namespace

Lattice make_lattice(LatticeKind kind) {
  Lattice lat;
  lat.kind = kind;
  switch (kind) {
    case LatticeKind::chain:
      lat.name = "chain";
      lat.neighbors = {{1, 0, 0}, {-1, 0, 0}};
      lat.reciprocal = cubic_reciprocal(1);
      lat.symmetry_points = {{"G", {0, 0, 0}}, {"X", {pi, 0, 0}}};
      break;
    case LatticeKind::square:
      lat.name = "square";
      lat.neighbors = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
      lat.reciprocal = cubic_reciprocal(2);
      lat.symmetry_points = {{"G", {0, 0, 0}}, {"X", {pi, 0, 0}}, {"M", {pi, pi, 0}}};
      break;
    case LatticeKind::simple_cubic:
      lat.name = "simple_cubic";
      lat.neighbors = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      lat.reciprocal = cubic_reciprocal(3);
      lat.symmetry_points = {
          {"G", {0, 0, 0}}, {"X", {pi, 0, 0}}, {"M", {pi, pi, 0}}, {"R", {pi, pi, pi}}};
      break;
    case LatticeKind::honeycomb: {
      // Bond length 1; Bravais vectors a1 = d1 - d2, a2 = d1 - d3.
      const double s3 = std::sqrt(3.0);
      lat.name = "honeycomb";
      lat.neighbors = {{1, 0, 0}, {-0.5, s3 / 2, 0}, {-0.5, -s3 / 2, 0}};
      lat.reciprocal = {{2 * pi / 3, -2 * pi / s3, 0}, {2 * pi / 3, 2 * pi / s3, 0}};
      lat.symmetry_points = {
          {"G", {0, 0, 0}}, {"K", {2 * pi / 3, 2 * pi / (3 * s3), 0}}, {"M", {2 * pi / 3, 0, 0}}};
      break;
    }
    case LatticeKind::custom:
      throw ValidationError("custom lattices must be built with make_custom_lattice");
  }
  lat.inversion_symmetric = closed_under_inversion(lat.neighbors);
  return lat;
}

const std::vector<std::string>& builtin_lattice_names() {
  static const std::vector<std::string> names{"chain", "square", "simple_cubic", "honeycomb"};
  return names;
}

Lattice lattice_by_name(const std::string& name) {
  if (name == "chain") return make_lattice(LatticeKind::chain);
  if (name == "square") return make_lattice(LatticeKind::square);
  if (name == "simple_cubic" || name == "cubic") return make_lattice(LatticeKind::simple_cubic);
  if (name == "honeycomb") return make_lattice(LatticeKind::honeycomb);
  throw ValidationError("unknown lattice '" + name + "'");
}

Lattice make_custom_lattice(std::string name, std::vector<Vec3> neighbors,
                            std::map<std::string, Vec3> symmetry_points,
                            std::vector<Vec3> reciprocal, int dimension) {
  if (neighbors.empty()) throw ValidationError("custom lattice needs at least one neighbour vector");
  if (!std::all_of(neighbors.begin(), neighbors.end(), is_finite))
    throw ValidationError("custom lattice has a non-finite neighbour vector");
  for (const auto& [label, k] : symmetry_points)
    if (!is_finite(k)) throw ValidationError("symmetry point '" + label + "' is not finite");
  if (reciprocal.empty()) {
    if (dimension < 1 || dimension > 3)
      throw ValidationError("custom lattice dimension must be 1, 2 or 3");
    reciprocal = cubic_reciprocal(dimension);
  }
  if (reciprocal.size() > 3) throw ValidationError("at most three reciprocal vectors");
  for (const auto& b : reciprocal)
    if (!is_finite(b) || dot(b, b) == 0.0)
      throw ValidationError("reciprocal vectors must be finite and nonzero");

  Lattice lat;
  lat.name = std::move(name);
  lat.kind = LatticeKind::custom;
  lat.neighbors = std::move(neighbors);
  lat.reciprocal = std::move(reciprocal);
  lat.symmetry_points = std::move(symmetry_points);
  lat.symmetry_points.try_emplace("G", Vec3{0, 0, 0});
  lat.inversion_symmetric = closed_under_inversion(lat.neighbors);
  return lat;
}

cplx structure_factor(const Lattice& lattice, const Vec3& k) {
  const double inv_z = 1.0 / static_cast<double>(lattice.z());
  if (lattice.inversion_symmetric) {
    // Paired +delta/-delta terms cancel in the imaginary part; sum cosines only.
    double re = 0.0;
    for (const auto& d : lattice.neighbors) re += std::cos(dot(k, d));
    return {re * inv_z, 0.0};
  }
  cplx sum{0.0, 0.0};
  for (const auto& d : lattice.neighbors) {
    const double phase = dot(k, d);
    sum += cplx{std::cos(phase), std::sin(phase)};
  }
  return sum * inv_z;
}

KPath build_kpath(const Lattice& lattice, std::span<const std::string> labels, int samples) {
  if (labels.size() < 2) throw ValidationError("a k-path needs at least two labels");
  if (samples < 1) throw ValidationError("samples per segment must be >= 1");

  std::vector<Vec3> corners;
  for (const auto& label : labels) {
    auto it = lattice.symmetry_points.find(label);
    if (it == lattice.symmetry_points.end())
      throw ValidationError("unknown symmetry point '" + label + "' for lattice " + lattice.name);
    corners.push_back(it->second);
  }

  KPath path;
  path.points.push_back({corners.front(), labels.front()});
  path.path_s.push_back(0.0);
  double s = 0.0;
  for (std::size_t seg = 0; seg + 1 < corners.size(); ++seg) {
    path.segments.push_back({labels[seg], labels[seg + 1], samples});
    const Vec3& a = corners[seg];
    const Vec3& b = corners[seg + 1];
    const Vec3 diff{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double length = std::sqrt(dot(diff, diff));
    for (int i = 1; i <= samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      KPoint p;
      if (i == samples) {
        p.coords = b;
        p.label = labels[seg + 1];
      } else {
        p.coords = {a[0] + t * diff[0], a[1] + t * diff[1], a[2] + t * diff[2]};
      }
      path.points.push_back(p);
      path.path_s.push_back(s + t * length);
    }
    s += length;
    path.path_s.back() = s;
  }
  return path;
}

std::vector<KPoint> build_bz_grid(const Lattice& lattice, int n) {
  if (n < 1) throw ValidationError("grid size must be >= 1");
  const int dim = lattice.dimension();
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);

  std::vector<KPoint> grid;
  grid.reserve(total);
  const int shift = n / 2;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % n);
      rem /= n;
    }
    Vec3 k{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) {
      const double frac = static_cast<double>(idx[d] - shift) / n;
      for (int c = 0; c < 3; ++c) k[c] += frac * lattice.reciprocal[d][c];
    }
    grid.push_back({k, {}});
  }
  return grid;
}

}  // namespace magnent
