#include <cmath>
#include <numbers>

#include "doctest.h"
#include "magnent/entanglement.hpp"
#include "magnent/errors.hpp"

using namespace magnent;

namespace {
Model cubic(double J, double D, double K, double S = 0.5) {
  return Model::validate(make_lattice(LatticeKind::simple_cubic), {J, D, K, S});
}
// (4/3) log2(4/3) - (1/3) log2(1/3)
constexpr double e_08 = 1.0817041659455104;
}  // namespace

TEST_CASE("entropy_from_squeeze") {
  CHECK(entropy_from_squeeze(0.0) == 0.0);
  CHECK(entropy_from_squeeze(std::atanh(0.5)) == doctest::Approx(e_08).epsilon(1e-13));
  for (double r : {6.0, 8.0, 10.0}) {
    const double s = std::sinh(r);
    const double asymptote = std::log2(s * s) + 1.0 / std::numbers::ln2;
    CHECK(std::abs(entropy_from_squeeze(r) - asymptote) < 4.0 / (s * s));
  }
  CHECK_THROWS_AS(entropy_from_squeeze(-0.1), ValidationError);
}

TEST_CASE("entropy_from_moduli") {
  CHECK(entropy_from_moduli(1.0, 0.0) == 0.0);
  CHECK(entropy_from_moduli(4.0 / 3.0, 1.0 / 3.0) == doctest::Approx(e_08).epsilon(1e-13));
  // stage-2 moduli at D/J = 0.1, K/J = 0.015, z = 6, |gamma| = 1
  CHECK(entropy_from_moduli(10.512492197305088, 9.512492197305088) == doctest::Approx(4.766).epsilon(1e-3));
  CHECK_THROWS_AS(entropy_from_moduli(2.0, 0.5), ValidationError);
  CHECK_THROWS_AS(entropy_from_moduli(0.5, -0.5), ValidationError);
  for (double r = 0.05; r < 5.0; r += 0.05) {
    const double c = std::cosh(r), s = std::sinh(r);
    CHECK(entropy_from_moduli(c * c, s * s) == doctest::Approx(entropy_from_squeeze(r)).epsilon(1e-12));
  }
}

TEST_CASE("hierarchy examples") {
  SUBCASE("no DM") {
    const Model m = cubic(1, 0, 0);
    for (double g : {0.1, 0.5, 0.9, -0.7}) {
      const auto rep = hierarchy_at_gamma(m, g);
      REQUIRE_FALSE(rep.diverged);
      CHECK(*rep.E_alphabeta == 0.0);
      CHECK(std::abs(*rep.E_ab - *rep.E0_ab) < 1e-12);
      CHECK(std::abs(*rep.E_dm_ab) < 1e-12);
    }
  }
  SUBCASE("D/J = 0.3, |gamma| = 0.8") {
    const auto rep = hierarchy_at_gamma(cubic(1, 0.3, 0), 0.8);
    CHECK(*rep.E_alphabeta == doctest::Approx(0.27015460203477704).epsilon(1e-10));
    CHECK(*rep.E0_ab == doctest::Approx(e_08).epsilon(1e-12));
    CHECK(*rep.E_ab > *rep.E0_ab);
    CHECK(*rep.E_dm_ab == doctest::Approx(*rep.E_ab - *rep.E0_ab));
  }
  SUBCASE("anisotropic anchor at the zone centre") {
    const Model m = cubic(1, 0.1, 0.015);
    const auto rep = hierarchy(m, KPoint{{0, 0, 0}, "G"});
    REQUIRE_FALSE(rep.diverged);
    CHECK(std::abs(*rep.E_ab - 8.094) < 0.02);
    CHECK(std::abs(*rep.E_alphabeta - 4.766) < 0.005);
    REQUIRE(rep.k.has_value());
    CHECK(rep.k->label == "G");
  }
  SUBCASE("divergent points are flagged, not clamped") {
    const auto rep = hierarchy_at_gamma(cubic(1, 0, 0), 1.0);
    CHECK(rep.diverged);
    CHECK_FALSE(rep.E0_ab.has_value());
    CHECK_FALSE(rep.E_ab.has_value());
    CHECK(rep.eps_heisenberg.has_value());
    CHECK(*rep.eps_heisenberg == 0.0);

    const auto partial = hierarchy_at_gamma(cubic(1, 0.3, 0), 0.96);
    CHECK(partial.diverged);
    CHECK(partial.E0_ab.has_value());
    CHECK_FALSE(partial.E_alphabeta.has_value());
    CHECK_FALSE(partial.delta.has_value());
  }
}

TEST_CASE("entropies depend only on |gamma|") {
  const Model m = Model::validate(make_lattice(LatticeKind::honeycomb), {1.0, 0.25, 0.01, 0.5});
  for (double mod : {0.1, 0.4, 0.7, 0.85}) {
    const auto real = hierarchy_at_gamma(m, mod);
    for (double phase : {0.3, 1.2, 2.9, -2.0}) {
      const auto cx = hierarchy_at_gamma(m, std::polar(mod, phase));
      CHECK(std::abs(*cx.E0_ab - *real.E0_ab) < 1e-12);
      CHECK(std::abs(*cx.E_alphabeta - *real.E_alphabeta) < 1e-12);
      CHECK(std::abs(*cx.E_ab - *real.E_ab) < 1e-12);
    }
  }
}

TEST_CASE("DM enhances entanglement and the hierarchy is ordered") {
  for (int gi = 1; gi <= 9; ++gi) {
    const double g = gi / 10.0;
    double prev = -1.0;
    for (int di = 0; di <= 5; ++di) {
      const auto rep = hierarchy_at_gamma(cubic(1, di / 10.0, 0), g);
      if (rep.diverged) continue;
      CHECK(*rep.E_ab > prev);
      prev = *rep.E_ab;
    }
  }
  const Model m = cubic(1, 0.3, 0);
  for (double g = 0.0; g < 0.95; g += 0.01) {
    const auto rep = hierarchy_at_gamma(m, g);
    REQUIRE_FALSE(rep.diverged);
    CHECK(*rep.E_ab >= *rep.E0_ab);
    CHECK(*rep.E_ab >= *rep.E_alphabeta);
    CHECK(*rep.E_alphabeta >= 0.0);
  }
}

TEST_CASE("excited-state entropies") {
  const Model m = cubic(1, 0, 0);
  CHECK(excited_state_entropy(0.0, m, Excitation::alpha_1) == doctest::Approx(0.0).epsilon(1e-14));

  // Frozen from an independent dense Fock-space calculation (cutoff 90).
  CHECK(excited_state_entropy(0.8, m, Excitation::alpha_1) == doctest::Approx(1.606785323592).epsilon(1e-10));
  CHECK(excited_state_entropy(0.8, m, Excitation::alpha_2) == doctest::Approx(1.960130114296).epsilon(1e-10));
  CHECK(excited_state_entropy(0.8, m, Excitation::alpha_beta_11) == doctest::Approx(2.500005104953).epsilon(1e-10));
  CHECK(excited_state_entropy(0.5, m, Excitation::beta_2) == doctest::Approx(0.856063197569).epsilon(1e-10));

  for (double g = 0.05; g <= 0.95; g += 0.05) {
    const double ground = *hierarchy_at_gamma(m, g).E0_ab;
    const double a1 = excited_state_entropy(g, m, Excitation::alpha_1);
    const double b1 = excited_state_entropy(g, m, Excitation::beta_1);
    CHECK(std::abs(a1 - b1) < 1e-10);
    CHECK(a1 > ground);
    CHECK(excited_state_entropy(g, m, Excitation::alpha_2) > ground);
    CHECK(excited_state_entropy(-g, m, Excitation::alpha_beta_11) > ground);
  }

  CHECK_THROWS_AS(excited_state_entropy(0.5, cubic(1, 0.1, 0), Excitation::alpha_1), ValidationError);
  CHECK_THROWS_AS(excited_state_entropy(1.0, m, Excitation::alpha_1), DomainError);
  fock::CutoffPolicy tight{4, 8, 1e-12};
  CHECK_THROWS_AS(excited_state_entropy(0.9, m, Excitation::alpha_1, tight), CutoffError);
}
