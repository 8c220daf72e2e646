#pragma once

#include "magnent/lattice.hpp"
#include "magnent/model.hpp"

namespace magnent {

/// One 2x2 bosonic Bogoliubov stage (u, v) with u real positive.
///
/// `ratio` is v/u* (equivalently e^{i phi} tanh r); `phase_law` is the closed-form
/// squeeze phase expected for this stage, used to cross-check arg(ratio) and to fix
/// the phase when ratio vanishes.
struct StageCoeffs {
  double u_sq = 1.0;
  double v_sq = 0.0;
  cplx ratio{0.0, 0.0};
  double u = 1.0;
  cplx v{0.0, 0.0};
  double phase_law = 0.0;
};

enum class Basis { ab_heisenberg, alphabeta_dm, ab_total };

struct SqueezeParams {
  double r = 0.0;
  double phi = 0.0;  // in (-pi, pi]
  Basis basis = Basis::ab_heisenberg;
};

struct Stage2 {
  StageCoeffs coeffs;
  cplx Gamma{0.0, 0.0};
};

/// Maps an angle onto (-pi, pi].
double wrap_phase(double angle);

/// Sublattice modes (a,b) -> Heisenberg eigenmodes (alpha,beta), with gamma rescaled by kappa.
/// Throws DomainError when |gamma/kappa| >= 1.
StageCoeffs stage1(cplx gamma, double kappa);

/// (alpha,beta) -> DM eigenmodes. Throws DomainError when |Gamma| >= 1.
Stage2 stage2(cplx gamma, const Model& model);

/// zSJ sqrt(kappa^2 - |gamma|^2)
double dispersion_heisenberg(const Model& model, cplx gamma);

/// zS sqrt(J^2 (kappa^2 - |gamma|^2) - D^2 |gamma|^2)
double dispersion_full(const Model& model, cplx gamma);

SqueezeParams squeeze_params(const StageCoeffs& coeffs, Basis basis);

/// Total squeeze of the DM ground state seen in the sublattice (a,b) modes.
SqueezeParams composite_squeeze(const StageCoeffs& s1, const StageCoeffs& s2, double d_over_j);

}  // namespace magnent
