#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "magnent/lattice.hpp"

namespace magnent::fock {

struct CutoffPolicy {
  std::size_t initial = 32;
  std::size_t max = 4096;
  double tail_tol = 1e-12;
};

/// Truncated two-mode state stored sparsely by occupation pair (n_a, n_b).
///
/// Only entries with n_a, n_b < cutoff may be present. `tail_weight` is the
/// probability cut off by the truncation, exact for squeezed vacua and carried
/// unchanged through apply_linear. `applied_norm` is the norm of the last
/// apply_linear result before renormalisation.
class TwoModeState {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  TwoModeState() = default;
  explicit TwoModeState(std::size_t cutoff);

  static TwoModeState vacuum(std::size_t cutoff = 2);
  static TwoModeState basis(std::size_t n_a, std::size_t n_b, std::size_t cutoff);

  cplx amplitude(std::size_t n_a, std::size_t n_b) const;
  void set(std::size_t n_a, std::size_t n_b, cplx value);
  void add(std::size_t n_a, std::size_t n_b, cplx value);

  std::size_t cutoff() const { return cutoff_; }
  const std::map<Index, cplx>& entries() const { return amps_; }
  double norm_sq() const;
  double norm_deficit() const { return 1.0 - norm_sq(); }
  double tail_weight() const { return tail_weight_; }
  void set_tail_weight(double w) { tail_weight_ = w; }
  double applied_norm() const { return applied_norm_; }
  void set_applied_norm(double n) { applied_norm_ = n; }

  /// <this|other>
  cplx inner(const TwoModeState& other) const;
  void scale(cplx factor);

 private:
  std::size_t cutoff_ = 2;
  std::map<Index, cplx> amps_;
  double tail_weight_ = 0.0;
  double applied_norm_ = 1.0;
};

/// Coefficients of c1 a^dag + c2 a + c3 b^dag + c4 b.
struct LinearLadder {
  cplx adag_a{0.0, 0.0};
  cplx a{0.0, 0.0};
  cplx adag_b{0.0, 0.0};
  cplx b{0.0, 0.0};
};

/// cosh(r)^-1 sum_n e^{i n phi} tanh^n r |n,n>, cutoff doubled from policy.initial until
/// tanh^{2N} r < tail_tol. Throws CutoffError if policy.max is insufficient.
TwoModeState two_mode_squeezed(double r, double phi, const CutoffPolicy& policy = {});

/// Smallest cutoff of the doubling sequence meeting the tail bound for this r.
std::size_t required_cutoff(double r, const CutoffPolicy& policy);

/// Applies the ladder combination without renormalising.
TwoModeState apply_ladder(const TwoModeState& state, const LinearLadder& op);

/// Applies the ladder combination and renormalises; the pre-normalisation norm is kept in
/// applied_norm(). Throws ValidationError if the operator annihilates the state.
TwoModeState apply_linear(const TwoModeState& state, cplx c_adag_a, cplx c_a, cplx c_adag_b,
                          cplx c_b);

struct ReducedSpectrum {
  std::vector<double> eigenvalues;
  double offdiag_mass = 0.0;  // sum of |rho_mn|^2 over m != n
  std::size_t largest_block = 0;
};

/// Spectrum of rho_a = Tr_b |psi><psi|, block-decomposed by the sparsity graph of rho_a and
/// diagonalised densely per block.
ReducedSpectrum reduced_spectrum(const TwoModeState& state);

/// -sum lambda log2 lambda over eigenvalues > 1e-15, in bits.
double reduced_entropy(const TwoModeState& state);

/// (1/2)[Var(X_A - X_B) + Var(P_A + P_B)] with X = (m + m^dag)/sqrt2, P = (m - m^dag)/(i sqrt2).
/// Throws CutoffError when state.tail_weight() exceeds tail_tol.
double quadrature_mean_variance(const TwoModeState& state, double tail_tol = 1e-12);

}  // namespace magnent::fock
