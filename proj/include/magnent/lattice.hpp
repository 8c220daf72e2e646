#pragma once

#include <array>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace magnent {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

enum class LatticeKind { chain, square, simple_cubic, honeycomb, custom };

/// Bipartite lattice with nearest-neighbour vectors in units of the lattice constant.
///
/// Wave vectors are Cartesian in units of 1/a, so k.delta is the bond phase directly.
/// `reciprocal` holds one reciprocal basis vector per active dimension; the BZ grid is
/// built from it.
struct Lattice {
  std::string name;
  LatticeKind kind = LatticeKind::custom;
  std::vector<Vec3> neighbors;
  std::vector<Vec3> reciprocal;
  std::map<std::string, Vec3> symmetry_points;
  bool inversion_symmetric = false;

  int z() const { return static_cast<int>(neighbors.size()); }
  int dimension() const { return static_cast<int>(reciprocal.size()); }
};

struct KPoint {
  Vec3 coords{0.0, 0.0, 0.0};
  std::string label;
};

struct KPathSegment {
  std::string from;
  std::string to;
  int samples = 1;
};

struct KPath {
  std::vector<KPathSegment> segments;
  std::vector<KPoint> points;
  std::vector<double> path_s;  // cumulative length, same size as points
};

Lattice make_lattice(LatticeKind kind);
Lattice lattice_by_name(const std::string& name);
const std::vector<std::string>& builtin_lattice_names();

/// Builds a user-defined lattice. Throws ValidationError when the neighbour set is empty,
/// non-finite, or the reciprocal basis is missing/degenerate. When `reciprocal` is empty a
/// 2*pi cubic basis of the given dimension is assumed.
Lattice make_custom_lattice(std::string name, std::vector<Vec3> neighbors,
                            std::map<std::string, Vec3> symmetry_points,
                            std::vector<Vec3> reciprocal, int dimension);

/// gamma_k = (1/z) sum_delta exp(i k.delta)
cplx structure_factor(const Lattice& lattice, const Vec3& k);
inline cplx structure_factor(const Lattice& lattice, const KPoint& k) {
  return structure_factor(lattice, k.coords);
}

/// Piecewise-linear path through labelled symmetry points; `samples` intervals per
/// segment, so the path has samples * (labels - 1) + 1 points.
KPath build_kpath(const Lattice& lattice, std::span<const std::string> labels, int samples);

/// Gamma-centred uniform grid, n points per active axis, row-major (last axis fastest).
/// Fractional coordinate along each reciprocal vector is (j - floor(n/2)) / n, which
/// spans [-1/2, 1/2) and contains the zone origin for every n.
std::vector<KPoint> build_bz_grid(const Lattice& lattice, int n);

}  // namespace magnent
