#include "magnent/epr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "magnent/entanglement.hpp"
#include "magnent/errors.hpp"

namespace magnent {

namespace {

QuadratureStats classify(double delta, Basis basis) {
  QuadratureStats q;
  q.delta = delta;
  q.squeezed = delta < 1.0;
  q.epr_uncertainty = std::min(delta, 1.0);
  q.basis = basis;
  return q;
}

}  // namespace

QuadratureStats mean_variance(const SqueezeParams& s) {
  return classify(std::cosh(2.0 * s.r) - std::sinh(2.0 * s.r) * std::cos(s.phi), s.basis);
}

QuadratureStats mean_variance_from_gamma(cplx gamma, double kappa) {
  const double radicand = kappa * kappa - std::norm(gamma);
  if (!(radicand > 0.0)) throw DomainError("mean variance undefined: |gamma| >= kappa");
  return classify((kappa + gamma.real()) / std::sqrt(radicand), Basis::ab_heisenberg);
}

bool squeezing_domain_dm(cplx gamma, const Model& model) {
  const StageCoeffs s1 = stage1(gamma, model.kappa());
  const Stage2 s2 = stage2(gamma, model);
  const SqueezeParams total = composite_squeeze(s1, s2.coeffs, model.d_over_j());
  const double lhs = std::tanh(total.r);
  const double rhs = std::cos(total.phi);
  const bool in_domain = lhs <= rhs;

  const double J = model.J();
  const double D = model.D();
  const double kappa = model.kappa();
  const double g_sq = std::norm(gamma);
  const double printed_lhs = (gamma * cplx{J, D}).real();
  const double printed_rhs = std::sqrt(J * J * (kappa * kappa - g_sq) - g_sq * D * D) - J * kappa;
  const bool printed = printed_lhs < printed_rhs;

  // The two tests share their boundary; disagreement is only tolerated right on it.
  const double scale = J * kappa;
  if (in_domain != printed && std::abs(lhs - rhs) > 1e-9 &&
      std::abs(printed_lhs - printed_rhs) > 1e-9 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "squeezing-domain forms disagree at gamma = " << gamma << ": tanh r = " << lhs
       << ", cos phi = " << rhs << ", Re[gamma(J+iD)] = " << printed_lhs << ", bound = " << printed_rhs;
    throw std::logic_error(os.str());
  }
  return in_domain;
}

double entropy_from_delta(double delta, double phi) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be finite and > 0");
  const double pi = std::numbers::pi;
  if (std::abs(phi) > 1e-12 && std::abs(std::abs(phi) - pi) > 1e-12)
    throw ValidationError("entropy_from_delta applies to real gamma only (phi = 0 or pi)");
  const double root = 2.0 * std::sqrt(delta);
  const double c = (1.0 + delta) / root;
  const double s = (1.0 - delta) / root;
  return entropy_from_moduli(c * c, s * s);
}

}  // namespace magnent
