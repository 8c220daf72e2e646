#pragma once

#include <string>
#include <vector>

#include "magnent/lattice.hpp"

namespace magnent {

/// Raw couplings in meV; S is dimensionless.
struct Couplings {
  double J = 1.0;
  double D = 0.0;
  double K = 0.0;
  double S = 0.5;
};

/// Validated, immutable model: couplings, lattice, and the anisotropy factor
/// kappa = 1 + 2K/(zJ). The single-ion easy axis is collinear with the DM vector.
class Model {
 public:
  static Model validate(Lattice lattice, Couplings couplings);

  const Lattice& lattice() const { return lattice_; }
  const Couplings& couplings() const { return couplings_; }
  double J() const { return couplings_.J; }
  double D() const { return couplings_.D; }
  double K() const { return couplings_.K; }
  double S() const { return couplings_.S; }
  int z() const { return lattice_.z(); }
  double kappa() const { return kappa_; }
  double d_over_j() const { return couplings_.D / couplings_.J; }

  /// |kappa| > sqrt(1 + D^2/J^2): both Bogoliubov stages exist on the whole zone.
  bool full_zone_stable() const { return full_zone_stable_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Model() = default;

  Lattice lattice_;
  Couplings couplings_;
  double kappa_ = 1.0;
  bool full_zone_stable_ = false;
  std::vector<std::string> warnings_;
};

struct DomainCheck {
  bool gamma_ok = false;  // |gamma/kappa| < 1
  bool Gamma_ok = false;  // |Gamma| < 1
  std::vector<std::string> messages;

  bool ok() const { return gamma_ok && Gamma_ok; }
};

double anisotropy_factor(double J, double K, int z);

/// Gamma = i D gamma / (J sqrt(kappa^2 - |gamma|^2)). Requires |gamma| < kappa.
cplx dm_mixing(const Model& model, cplx gamma);

DomainCheck check_domain(const Model& model, cplx gamma);

}  // namespace magnent
