#pragma once

#include <optional>

#include "magnent/bogoliubov.hpp"
#include "magnent/fock_oracle.hpp"
#include "magnent/lattice.hpp"
#include "magnent/model.hpp"

namespace magnent {

/// Entropies are in bits; missing values mean the relevant stage was out of domain.
struct EntanglementReport {
  std::optional<KPoint> k;
  cplx gamma{0.0, 0.0};
  std::optional<double> eps_heisenberg;
  std::optional<double> eps_full;
  std::optional<double> E0_ab;
  std::optional<double> E_alphabeta;
  std::optional<double> E_ab;
  std::optional<double> E_dm_ab;
  std::optional<double> delta;
  std::optional<double> epr_uncertainty;
  bool squeezed = false;
  bool diverged = false;
};

/// cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r
double entropy_from_squeeze(double r);

/// u log2 u - v log2 v for u - v = 1. Throws ValidationError otherwise.
double entropy_from_moduli(double u_sq, double v_sq);

EntanglementReport hierarchy(const Model& model, const KPoint& k);
EntanglementReport hierarchy_at_gamma(const Model& model, cplx gamma);

enum class Excitation { alpha_1, beta_1, alpha_2, beta_2, alpha_beta_11 };

/// Entanglement entropy of an excited Heisenberg eigenstate (alpha^dag, beta^dag acting on
/// the squeezed ground state), computed in the truncated Fock space. Requires D = 0.
double excited_state_entropy(cplx gamma, const Model& model, Excitation excitation,
                             const fock::CutoffPolicy& policy = {});

}  // namespace magnent
