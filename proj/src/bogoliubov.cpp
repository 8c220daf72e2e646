#include "magnent/bogoliubov.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "magnent/errors.hpp"

namespace magnent {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double phase_tol = 1e-12;

double safe_arg(cplx z) { return std::abs(z) == 0.0 ? 0.0 : std::arg(z); }

// Shared Bogoliubov algebra for a coupling x with |x| < 1:
// |u|^2 = 1/(2 sqrt(1-|x|^2)) + 1/2, v/u* = -(1 - sqrt(1-|x|^2)) / x.
StageCoeffs solve_stage(cplx x, double phase_law) {
  const double x_sq = std::norm(x);
  const double root = std::sqrt(1.0 - x_sq);
  StageCoeffs c;
  c.u_sq = 0.5 / root + 0.5;
  c.v_sq = 0.5 / root - 0.5;
  c.u = std::sqrt(c.u_sq);
  // 1 - sqrt(1-|x|^2) = |x|^2 / (1 + sqrt(1-|x|^2)), so the ratio is -conj(x)/(1+root).
  c.ratio = -std::conj(x) / (1.0 + root);
  c.v = c.ratio * c.u;
  c.phase_law = wrap_phase(phase_law);
  return c;
}

void check_phase(double got, double expected, const char* what) {
  if (std::abs(wrap_phase(got - expected)) > phase_tol) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": arg = " << got << " disagrees with phase law " << expected;
    throw std::logic_error(os.str());
  }
}

}  // namespace

double wrap_phase(double angle) {
  double a = std::remainder(angle, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

StageCoeffs stage1(cplx gamma, double kappa) {
  const cplx g = gamma / kappa;
  if (!(std::abs(g) < 1.0)) {
    std::ostringstream os;
    os << "stage 1 undefined at gamma = " << gamma << " (|gamma/kappa| = " << std::abs(g) << ")";
    throw DomainError(os.str());
  }
  return solve_stage(g, pi - safe_arg(gamma));
}

Stage2 stage2(cplx gamma, const Model& model) {
  const double radicand = model.kappa() * model.kappa() - std::norm(gamma);
  if (!(radicand > 0.0)) {
    std::ostringstream os;
    os << "stage 2 undefined at gamma = " << gamma << " (|gamma| >= kappa)";
    throw DomainError(os.str());
  }
  Stage2 out;
  out.Gamma = dm_mixing(model, gamma);
  if (!(std::abs(out.Gamma) < 1.0)) {
    std::ostringstream os;
    os << "stage 2 undefined at gamma = " << gamma << " (|Gamma| = " << std::abs(out.Gamma) << ")";
    throw DomainError(os.str());
  }
  out.coeffs = solve_stage(out.Gamma, pi / 2 - safe_arg(gamma));
  return out;
}

double dispersion_heisenberg(const Model& model, cplx gamma) {
  const double radicand = model.kappa() * model.kappa() - std::norm(gamma);
  if (radicand < 0.0) throw DomainError("Heisenberg dispersion undefined: |gamma| > kappa");
  return model.z() * model.S() * model.J() * std::sqrt(radicand);
}

double dispersion_full(const Model& model, cplx gamma) {
  const double J = model.J();
  const double D = model.D();
  const double kappa = model.kappa();
  const double g_sq = std::norm(gamma);
  const double radicand = J * J * (kappa * kappa - g_sq) - D * D * g_sq;
  if (radicand < 0.0) throw DomainError("full dispersion undefined: negative radicand");
  return model.z() * model.S() * std::sqrt(radicand);
}

SqueezeParams squeeze_params(const StageCoeffs& coeffs, Basis basis) {
  SqueezeParams p;
  p.basis = basis;
  const double t = std::abs(coeffs.ratio);
  p.r = std::atanh(t);
  if (t == 0.0) {
    p.phi = coeffs.phase_law;
  } else {
    p.phi = wrap_phase(std::arg(coeffs.ratio));
    check_phase(p.phi, coeffs.phase_law, "stage squeeze phase");
  }
  return p;
}

SqueezeParams composite_squeeze(const StageCoeffs& s1, const StageCoeffs& s2, double d_over_j) {
  // u, eta real: (v eta + u zeta) / (u eta + v* zeta) = (t1 + t2) / (1 + conj(t1) t2).
  const cplx t1 = s1.ratio;
  const cplx t2 = s2.ratio;
  const cplx q = (t1 + t2) / (1.0 + std::conj(t1) * t2);
  const double t = std::abs(q);
  if (!(t < 1.0)) throw std::logic_error("composite squeeze quotient has modulus >= 1");

  SqueezeParams p;
  p.basis = Basis::ab_total;
  p.r = std::atanh(t);
  // pi - arg[gamma (1 + i D/J)] = stage-1 law - atan(D/J)
  const double law = wrap_phase(s1.phase_law - std::atan(d_over_j));
  if (t == 0.0) {
    p.phi = law;
  } else {
    p.phi = wrap_phase(std::arg(q));
    check_phase(p.phi, law, "composite squeeze phase");
  }
  return p;
}

}  // namespace magnent
