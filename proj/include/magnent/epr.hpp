#pragma once

#include "magnent/bogoliubov.hpp"
#include "magnent/model.hpp"

namespace magnent {

struct QuadratureStats {
  double delta = 1.0;
  double epr_uncertainty = 1.0;  // min(delta, 1)
  bool squeezed = false;         // delta < 1
  Basis basis = Basis::ab_heisenberg;
};

/// delta = cosh 2r - sinh 2r cos phi, vacuum variance 1/2 per quadrature.
QuadratureStats mean_variance(const SqueezeParams& s);

/// Heisenberg ground state: (kappa + Re gamma) / sqrt(kappa^2 - |gamma|^2).
QuadratureStats mean_variance_from_gamma(cplx gamma, double kappa);

/// tanh r_hat <= cos phi_hat for the total (a,b) state. Cross-checked against
/// Re[gamma (J + iD)] < sqrt(J^2 (kappa^2 - |gamma|^2) - |gamma|^2 D^2) - J kappa.
bool squeezing_domain_dm(cplx gamma, const Model& model);

/// Inverts delta for real gamma (phi = 0 or pi); the expression is invariant under
/// delta -> 1/delta so both phases share it. Throws ValidationError for delta <= 0 or
/// any other phase.
double entropy_from_delta(double delta, double phi);

}  // namespace magnent
