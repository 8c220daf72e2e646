#include "magnent/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "magnent/errors.hpp"

namespace magnent::fock {

TwoModeState::TwoModeState(std::size_t cutoff) : cutoff_(std::max<std::size_t>(cutoff, 2)) {}

TwoModeState TwoModeState::vacuum(std::size_t cutoff) { return basis(0, 0, cutoff); }

TwoModeState TwoModeState::basis(std::size_t n_a, std::size_t n_b, std::size_t cutoff) {
  TwoModeState s(std::max({cutoff, n_a + 1, n_b + 1}));
  s.set(n_a, n_b, 1.0);
  return s;
}

cplx TwoModeState::amplitude(std::size_t n_a, std::size_t n_b) const {
  auto it = amps_.find({n_a, n_b});
  return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

void TwoModeState::set(std::size_t n_a, std::size_t n_b, cplx value) {
  if (n_a >= cutoff_ || n_b >= cutoff_) throw ValidationError("occupation beyond state cutoff");
  amps_[{n_a, n_b}] = value;
}

void TwoModeState::add(std::size_t n_a, std::size_t n_b, cplx value) {
  if (n_a >= cutoff_ || n_b >= cutoff_) throw ValidationError("occupation beyond state cutoff");
  amps_[{n_a, n_b}] += value;
}

double TwoModeState::norm_sq() const {
  double sum = 0.0;
  for (const auto& [idx, amp] : amps_) sum += std::norm(amp);
  return sum;
}

cplx TwoModeState::inner(const TwoModeState& other) const {
  cplx sum{0.0, 0.0};
  for (const auto& [idx, amp] : amps_) {
    auto it = other.amps_.find(idx);
    if (it != other.amps_.end()) sum += std::conj(amp) * it->second;
  }
  return sum;
}

void TwoModeState::scale(cplx factor) {
  for (auto& [idx, amp] : amps_) amp *= factor;
}

std::size_t required_cutoff(double r, const CutoffPolicy& policy) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("squeeze magnitude must be finite and >= 0");
  if (policy.initial < 2 || policy.initial > policy.max || !(policy.tail_tol > 0.0))
    throw ValidationError("invalid cutoff policy");
  const double t = std::tanh(r);
  for (std::size_t n = policy.initial; n <= policy.max; n *= 2) {
    const double tail = t == 0.0 ? 0.0 : std::exp(2.0 * static_cast<double>(n) * std::log(t));
    if (tail < policy.tail_tol) return n;
    if (n > policy.max / 2) break;
  }
  std::ostringstream os;
  os << "cutoff " << policy.max << " cannot hold squeezed state with r = " << r
     << " to tail weight " << policy.tail_tol;
  throw CutoffError(os.str());
}

TwoModeState two_mode_squeezed(double r, double phi, const CutoffPolicy& policy) {
  const std::size_t n_max = required_cutoff(r, policy);
  const double t = std::tanh(r);
  TwoModeState state(n_max);
  double mag = 1.0 / std::cosh(r);
  for (std::size_t n = 0; n < n_max && mag > 0.0; ++n) {
    state.set(n, n, std::polar(mag, static_cast<double>(n) * phi));
    mag *= t;
  }
  state.set_tail_weight(t == 0.0 ? 0.0 : std::exp(2.0 * static_cast<double>(n_max) * std::log(t)));
  return state;
}

TwoModeState apply_ladder(const TwoModeState& state, const LinearLadder& op) {
  const bool raises = op.adag_a != 0.0 || op.adag_b != 0.0;
  TwoModeState out(state.cutoff() + (raises ? 1 : 0));
  for (const auto& [idx, amp] : state.entries()) {
    const auto [na, nb] = idx;
    if (op.adag_a != 0.0) out.add(na + 1, nb, op.adag_a * std::sqrt(double(na + 1)) * amp);
    if (op.a != 0.0 && na > 0) out.add(na - 1, nb, op.a * std::sqrt(double(na)) * amp);
    if (op.adag_b != 0.0) out.add(na, nb + 1, op.adag_b * std::sqrt(double(nb + 1)) * amp);
    if (op.b != 0.0 && nb > 0) out.add(na, nb - 1, op.b * std::sqrt(double(nb)) * amp);
  }
  out.set_tail_weight(state.tail_weight());
  return out;
}

TwoModeState apply_linear(const TwoModeState& state, cplx c_adag_a, cplx c_a, cplx c_adag_b,
                          cplx c_b) {
  TwoModeState out = apply_ladder(state, {c_adag_a, c_a, c_adag_b, c_b});
  const double norm = std::sqrt(out.norm_sq());
  if (norm < 1e-14) throw ValidationError("ladder operator annihilated the state");
  out.scale(1.0 / norm);
  out.set_applied_norm(norm);
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ReducedSpectrum reduced_spectrum(const TwoModeState& state) {
  // Columns of psi grouped by the traced-out occupation n_b.
  std::map<std::size_t, std::vector<std::pair<std::size_t, cplx>>> by_b;
  std::map<std::size_t, std::size_t> slot_of_a;
  for (const auto& [idx, amp] : state.entries()) {
    if (amp == 0.0) continue;
    by_b[idx.second].emplace_back(idx.first, amp);
    slot_of_a.try_emplace(idx.first, slot_of_a.size());
  }

  DisjointSets sets(slot_of_a.size());
  for (const auto& [nb, column] : by_b)
    for (std::size_t i = 1; i < column.size(); ++i)
      sets.unite(slot_of_a[column[0].first], slot_of_a[column[i].first]);

  // Local index of each n_a within its block.
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (const auto& [na, slot] : slot_of_a) blocks[sets.find(slot)].push_back(na);
  std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> where;
  for (const auto& [root, members] : blocks)
    for (std::size_t i = 0; i < members.size(); ++i) where[members[i]] = {root, i};

  std::map<std::size_t, Eigen::MatrixXcd> rho;
  for (const auto& [root, members] : blocks)
    rho.emplace(root, Eigen::MatrixXcd::Zero(Eigen::Index(members.size()), Eigen::Index(members.size())));
  for (const auto& [nb, column] : by_b) {
    for (const auto& [m, psi_m] : column) {
      const auto [root, i] = where[m];
      auto& block = rho[root];
      for (const auto& [n, psi_n] : column) block(Eigen::Index(i), Eigen::Index(where[n].second)) += psi_m * std::conj(psi_n);
    }
  }

  ReducedSpectrum spec;
  for (auto& [root, block] : rho) {
    spec.largest_block = std::max<std::size_t>(spec.largest_block, std::size_t(block.rows()));
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      for (Eigen::Index j = 0; j < block.cols(); ++j)
        if (i != j) spec.offdiag_mass += std::norm(block(i, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      spec.eigenvalues.push_back(solver.eigenvalues()(i));
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<>());
  return spec;
}

double reduced_entropy(const TwoModeState& state) {
  double entropy = 0.0;
  for (double lambda : reduced_spectrum(state).eigenvalues)
    if (lambda > 1e-15) entropy -= lambda * std::log2(lambda);
  return entropy;
}

double quadrature_mean_variance(const TwoModeState& state, double tail_tol) {
  if (state.tail_weight() > tail_tol) {
    std::ostringstream os;
    os << "state tail weight " << state.tail_weight() << " exceeds " << tail_tol
       << "; quadrature variances would be truncation-biased";
    throw CutoffError(os.str());
  }
  const double norm_sq = state.norm_sq();
  const double h = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  auto variance = [&](const LinearLadder& op) {
    const TwoModeState image = apply_ladder(state, op);
    const double mean = state.inner(image).real() / norm_sq;
    return image.norm_sq() / norm_sq - mean * mean;
  };
  // X_A - X_B and P_A + P_B, both Hermitian so <O^2> = ||O psi||^2.
  const double var_x = variance({h, h, -h, -h});
  const double var_p = variance({i * h, -i * h, i * h, -i * h});
  return 0.5 * (var_x + var_p);
}

}  // namespace magnent::fock
