#include "magnent/entanglement.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "magnent/epr.hpp"
#include "magnent/errors.hpp"

namespace magnent {

namespace {

// u log2 u - v log2 v rewritten as log2 u + v log2(1 + 1/v), valid when u = 1 + v.
double two_mode_entropy(double u_sq, double v_sq) {
  if (v_sq == 0.0) return 0.0;
  return std::log2(u_sq) + v_sq * std::log1p(1.0 / v_sq) / std::numbers::ln2;
}

}  // namespace

double entropy_from_squeeze(double r) {
  if (!std::isfinite(r) || r < 0.0) throw ValidationError("squeeze magnitude must be finite and >= 0");
  const double s = std::sinh(r);
  const double c = std::cosh(r);
  return two_mode_entropy(c * c, s * s);
}

double entropy_from_moduli(double u_sq, double v_sq) {
  if (!std::isfinite(u_sq) || !std::isfinite(v_sq) || v_sq < 0.0 ||
      std::abs((u_sq - v_sq) - 1.0) > 1e-9 * std::max(1.0, u_sq)) {
    std::ostringstream os;
    os << "Bogoliubov moduli violate |u|^2 - |v|^2 = 1 (u_sq=" << u_sq << ", v_sq=" << v_sq << ")";
    throw ValidationError(os.str());
  }
  return two_mode_entropy(u_sq, v_sq);
}

EntanglementReport hierarchy_at_gamma(const Model& model, cplx gamma) {
  EntanglementReport rep;
  rep.gamma = gamma;
  try {
    rep.eps_heisenberg = dispersion_heisenberg(model, gamma);
  } catch (const DomainError&) {
  }
  try {
    rep.eps_full = dispersion_full(model, gamma);
  } catch (const DomainError&) {
  }

  const DomainCheck check = check_domain(model, gamma);
  if (!check.gamma_ok) {
    rep.diverged = true;
    return rep;
  }
  const StageCoeffs s1 = stage1(gamma, model.kappa());
  rep.E0_ab = entropy_from_moduli(s1.u_sq, s1.v_sq);
  if (!check.Gamma_ok) {
    rep.diverged = true;
    return rep;
  }
  const Stage2 s2 = stage2(gamma, model);
  rep.E_alphabeta = entropy_from_moduli(s2.coeffs.u_sq, s2.coeffs.v_sq);
  const SqueezeParams total = composite_squeeze(s1, s2.coeffs, model.d_over_j());
  rep.E_ab = entropy_from_squeeze(total.r);
  rep.E_dm_ab = *rep.E_ab - *rep.E0_ab;

  const QuadratureStats stats = mean_variance(total);
  rep.delta = stats.delta;
  rep.epr_uncertainty = stats.epr_uncertainty;
  rep.squeezed = stats.squeezed;
  return rep;
}

EntanglementReport hierarchy(const Model& model, const KPoint& k) {
  EntanglementReport rep = hierarchy_at_gamma(model, structure_factor(model.lattice(), k));
  rep.k = k;
  return rep;
}

double excited_state_entropy(cplx gamma, const Model& model, Excitation excitation,
                             const fock::CutoffPolicy& policy) {
  if (model.D() != 0.0)
    throw ValidationError("excited-state entropies are defined for the Heisenberg model (D = 0)");
  const StageCoeffs s1 = stage1(gamma, model.kappa());
  const SqueezeParams sq = squeeze_params(s1, Basis::ab_heisenberg);

  // alpha^dag = u a^dag - v* b, beta^dag = u b^dag - v* a
  const fock::LinearLadder alpha_dag{s1.u, 0.0, 0.0, -std::conj(s1.v)};
  const fock::LinearLadder beta_dag{0.0, -std::conj(s1.v), s1.u, 0.0};

  std::vector<const fock::LinearLadder*> ops;
  double exact_norm_sq = 1.0;
  switch (excitation) {
    case Excitation::alpha_1: ops = {&alpha_dag}; break;
    case Excitation::beta_1: ops = {&beta_dag}; break;
    case Excitation::alpha_2: ops = {&alpha_dag, &alpha_dag}; exact_norm_sq = 2.0; break;
    case Excitation::beta_2: ops = {&beta_dag, &beta_dag}; exact_norm_sq = 2.0; break;
    case Excitation::alpha_beta_11: ops = {&alpha_dag, &beta_dag}; break;
  }

  // The truncated excited state loses more weight than the vacuum tail; compare against the
  // exact norm of the excitation and widen the cutoff until the deficit is within tolerance.
  fock::CutoffPolicy p = policy;
  p.initial = fock::required_cutoff(sq.r, policy);
  for (;;) {
    fock::TwoModeState state = fock::two_mode_squeezed(sq.r, sq.phi, p);
    for (const auto* op : ops) state = fock::apply_ladder(state, *op);
    const double norm_sq = state.norm_sq();
    if (std::abs(1.0 - norm_sq / exact_norm_sq) <= p.tail_tol) {
      state.scale(1.0 / std::sqrt(norm_sq));
      return fock::reduced_entropy(state);
    }
    if (p.initial > p.max / 2) {
      std::ostringstream os;
      os << "excited state at |gamma| = " << std::abs(gamma) << " needs a cutoff above " << p.max;
      throw CutoffError(os.str());
    }
    p.initial *= 2;
  }
}

}  // namespace magnent
