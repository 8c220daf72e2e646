#include "magnent/model.hpp"

#include <cmath>
#include <sstream>

#include "magnent/errors.hpp"

namespace magnent {

double anisotropy_factor(double J, double K, int z) {
  return 1.0 + 2.0 * K / (static_cast<double>(z) * J);
}

Model Model::validate(Lattice lattice, Couplings couplings) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(couplings.J) || !finite(couplings.D) || !finite(couplings.K) || !finite(couplings.S))
    throw ValidationError("couplings must be finite");
  if (couplings.J <= 0.0) throw ValidationError("exchange J must be > 0 (antiferromagnetic)");
  if (couplings.S <= 0.0) throw ValidationError("spin S must be > 0");
  if (couplings.D < 0.0) throw ValidationError("D is a magnitude and must be >= 0");
  if (lattice.z() < 1) throw ValidationError("lattice has no neighbours");

  Model m;
  m.kappa_ = anisotropy_factor(couplings.J, couplings.K, lattice.z());
  if (!(m.kappa_ > 0.0)) {
    std::ostringstream os;
    os << "anisotropy factor 1 + 2K/(zJ) = " << m.kappa_ << " must be > 0";
    throw ValidationError(os.str());
  }
  const double dj = couplings.D / couplings.J;
  m.full_zone_stable_ = std::abs(m.kappa_) > std::sqrt(1.0 + dj * dj);
  if (!m.full_zone_stable_) {
    std::ostringstream os;
    os << "stability inequality |1+2K/(zJ)| > sqrt(1+D^2/J^2) fails (kappa=" << m.kappa_
       << "); points near |gamma|=1 will be reported as diverged";
    m.warnings_.push_back(os.str());
  }
  m.lattice_ = std::move(lattice);
  m.couplings_ = couplings;
  return m;
}

cplx dm_mixing(const Model& model, cplx gamma) {
  const double kappa = model.kappa();
  const double radicand = kappa * kappa - std::norm(gamma);
  if (!(radicand > 0.0)) throw DomainError("stage-1 transformation undefined: |gamma| >= kappa");
  if (model.D() == 0.0) return {0.0, 0.0};
  return cplx{0.0, model.d_over_j()} * gamma / std::sqrt(radicand);
}

DomainCheck check_domain(const Model& model, cplx gamma) {
  DomainCheck check;
  const double g = std::abs(gamma) / model.kappa();
  check.gamma_ok = g < 1.0;
  if (!check.gamma_ok) {
    std::ostringstream os;
    os << "|gamma/kappa| = " << g << " >= 1";
    check.messages.push_back(os.str());
    return check;
  }
  const double big_gamma = std::abs(dm_mixing(model, gamma));
  check.Gamma_ok = big_gamma < 1.0;
  if (!check.Gamma_ok) {
    std::ostringstream os;
    os << "|Gamma| = " << big_gamma << " >= 1";
    check.messages.push_back(os.str());
  }
  return check;
}

}  // namespace magnent
