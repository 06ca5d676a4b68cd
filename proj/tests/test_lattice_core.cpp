#include <doctest.h>

#include <cmath>
#include <random>

#include "dkra/params.hpp"
#include "dkra/potential.hpp"

using namespace dkra;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("rescale: identity and eta scaling") {
  // eta = 1: rescaling is the identity
  auto s = rescale({4 * kPi, 1.0, 3.0, 1.0, 1.0}, 0.5, {1, 1});
  CHECK(s.k_tilde == 3.0);
  CHECK(s.l_tilde == 1.0);
  CHECK(s.hbar_tilde == 1.0);
  CHECK(s.phi == 0.5);

  // T*hbar = 8*pi -> (nu, mu) = (2, 1)
  s = rescale({8 * kPi, 0.5, 6.0, 2.0, 1.0}, 0.0, {2, 1});
  CHECK(s.k_tilde == 3.0);
  CHECK(s.l_tilde == 1.0);
  CHECK(s.hbar_tilde == 0.5);

  // direct substitution: eta = 1/4, hbar = 4
  s = rescale({4 * kPi, 0.25, 12.0, 4.0, 4.0}, 0.0, {4, 1});
  CHECK(s.k_tilde == 3.0);
  CHECK(s.l_tilde == 1.0);
  CHECK(s.hbar_tilde == 1.0);
}

TEST_CASE("rescale: rejects off-resonance configurations") {
  CHECK_THROWS_AS(rescale({4 * kPi * 1.001, 1.0, 3.0, 1.0, 1.0}, 0.0, {1, 1}),
                  ConfigError);
  CHECK_THROWS_AS(rescale({4 * kPi, 1.0, 3.0, 1.0, 1.0}, 0.0, {1, 2}),
                  ConfigError);
  // invariant violations
  CHECK_THROWS_AS(rescale({4 * kPi, 0.0, 3.0, 1.0, 1.0}, 0.0, {1, 1}),
                  ConfigError);
  CHECK_THROWS_AS(rescale({4 * kPi, 5.0 * kPi, 3.0, 1.0, 1.0}, 0.0, {1, 1}),
                  ConfigError);
  CHECK_THROWS_AS(rescale({4 * kPi, 1.0, -3.0, 1.0, 1.0}, 0.0, {1, 1}),
                  ConfigError);
}

TEST_CASE("rescale: homogeneous under eta*c, (K,L,hbar)/c") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> amp(0.1, 10.0);
  for (int trial = 0; trial < 32; ++trial) {
    const double hbar = amp(rng);
    const double T = 4 * kPi / hbar;
    const double eta = 0.3 * T;
    const double K = amp(rng), L = amp(rng);
    const auto base = rescale({T, eta, K, L, hbar}, 0.7, {1, 1});
    // power-of-two factors keep the products bit-identical
    for (double c : {0.5, 2.0, 4.0}) {
      const auto scaled =
          rescale({T * c, eta * c, K / c, L / c, hbar / c}, 0.7, {1, 1});
      CHECK(scaled.k_tilde == base.k_tilde);
      CHECK(scaled.l_tilde == base.l_tilde);
      CHECK(scaled.hbar_tilde == base.hbar_tilde);
    }
    const double c = amp(rng);
    const auto scaled =
        rescale({T * c, eta * c, K / c, L / c, hbar / c}, 0.7, {1, 1});
    CHECK(scaled.k_tilde == doctest::Approx(base.k_tilde).epsilon(1e-12));
    CHECK(scaled.l_tilde == doctest::Approx(base.l_tilde).epsilon(1e-12));
    CHECK(scaled.hbar_tilde ==
          doctest::Approx(base.hbar_tilde).epsilon(1e-12));
  }
}

TEST_CASE("make_scaled: validated ranges name the offending field") {
  CHECK_THROWS_WITH_AS(make_scaled(-0.5, 1, 1, 0),
                       doctest::Contains("k_tilde"), ConfigError);
  CHECK_THROWS_WITH_AS(make_scaled(1, 101.0, 1, 0),
                       doctest::Contains("l_tilde"), ConfigError);
  CHECK_THROWS_WITH_AS(make_scaled(1, 1, 0.005, 0),
                       doctest::Contains("hbar_tilde"), ConfigError);
  CHECK_THROWS_WITH_AS(make_scaled(1, 1, 25.0, 0),
                       doctest::Contains("hbar_tilde"), ConfigError);
  CHECK_THROWS_WITH_AS(make_scaled(1, 1, 1, 4.0), doctest::Contains("phi"),
                       ConfigError);
  CHECK_NOTHROW(make_scaled(0, 0, 0.01, -kPi));
  CHECK_NOTHROW(make_scaled(100, 100, 20, kPi));
}

TEST_CASE("resonance order must be coprime positive integers") {
  CHECK_THROWS_AS(make_resonance(0, 1), ConfigError);
  CHECK_THROWS_AS(make_resonance(1, 0), ConfigError);
  CHECK_THROWS_AS(make_resonance(2, 4), ConfigError);
  CHECK_NOTHROW(make_resonance(1, 1));
  CHECK_NOTHROW(make_resonance(1, 2));
  CHECK_NOTHROW(make_resonance(3, 2));
}

TEST_CASE("potential: closed-form evaluation") {
  const auto vcos = Potential::cosine();
  CHECK(vcos.eval(0.0) == 1.0);
  CHECK(vcos.deriv(0.0) == doctest::Approx(0.0).epsilon(0.0));

  const auto shifted = Potential::cosine(kPi / 2);
  CHECK(std::abs(shifted.eval(0.0)) < 1e-15);
  CHECK(shifted.deriv(0.0) == doctest::Approx(-1.0).epsilon(1e-15));

  // cos(q) + sin(2q) at q = pi/4: the scenario-i form with zero phases
  const Potential v({{1, 1.0, 0.0}, {2, 1.0, -kPi / 2}});
  CHECK(v.eval(kPi / 4) ==
        doctest::Approx(std::cos(kPi / 4) + 1.0).epsilon(1e-15));
}

TEST_CASE("potential: rejects bad harmonics") {
  CHECK_THROWS_AS(Potential({{0, 1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(Potential({{-2, 1.0, 0.0}}), ConfigError);
}

TEST_CASE("potential: 2*pi periodicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uq(-10.0, 10.0);
  const Potential v({{1, 0.7, 0.3}, {3, -1.2, 1.9}, {5, 0.25, -2.4}});
  for (int i = 0; i < 64; ++i) {
    const double q = uq(rng);
    CHECK(v.eval(q + 2 * kPi) == doctest::Approx(v.eval(q)).epsilon(1e-12));
  }
}

TEST_CASE("potential: derivative matches central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uq(-10.0, 10.0);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  std::uniform_int_distribution<int> um(1, 5);
  std::uniform_int_distribution<int> uterms(1, 4);
  const double h = 1e-5;
  for (int trial = 0; trial < 16; ++trial) {
    std::vector<Harmonic> terms;
    const int k = uterms(rng);
    for (int j = 0; j < k; ++j)
      terms.push_back({um(rng), ua(rng), uq(rng)});
    const Potential v(terms);
    for (int i = 0; i < 128; ++i) {
      const double q = uq(rng);
      const double fd = (v.eval(q + h) - v.eval(q - h)) / (2 * h);
      CHECK(std::abs(v.deriv(q) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("potential spec: scenario builders") {
  const double phi = 0.8;
  auto [vk2, vl2] = PotentialSpec{}.build(phi);
  CHECK(vk2.eval(1.1) == doctest::Approx(std::cos(1.1)).epsilon(1e-15));
  CHECK(vl2.eval(1.1) == doctest::Approx(std::cos(1.1 + phi)).epsilon(1e-15));

  PotentialSpec s1;
  s1.kind = PotentialSpec::Kind::scenario_i;
  s1.phi1 = 0.2;
  s1.phi2 = -0.4;
  auto [vk1, vl1] = s1.build(phi);  // phi inert in scenario i
  CHECK(vk1.eval(0.9) == doctest::Approx(std::cos(0.9 + 0.2) +
                                         std::sin(2 * 0.9 - 0.4))
                             .epsilon(1e-14));
  CHECK(vl1.eval(0.9) == doctest::Approx(std::cos(0.9)).epsilon(1e-15));
}
