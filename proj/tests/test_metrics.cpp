#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcslab/metrics.hpp"

using namespace hcslab;

namespace {

constexpr double kPi = std::numbers::pi;

double urand(std::mt19937_64& gen) { return (gen() >> 11) * 0x1.0p-53; }

HcsParams random_params(std::mt19937_64& gen, double r_min = 0.05, double r_max = 3.0) {
  HcsParams p;
  p.epsilon = urand(gen);
  p.theta = 2.0 * kPi * urand(gen);
  p.phi = 2.0 * kPi * urand(gen);
  p.alpha = std::polar(r_min + (r_max - r_min) * urand(gen), 2.0 * kPi * urand(gen));
  return p;
}

const FockVector kDisplacedOne = build_hcs_fock({0.5, kPi, 0.0, {1.0, 0.0}});

}  // namespace

TEST_CASE("mandel q") {
  CHECK(mandel_q(build_hcs_fock({0.0, 0.0, 0.0, {0.0, 0.0}})) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(mandel_q(coherent_vector({1.7, 0.4}))) < 1e-12);
  CHECK(mandel_q(kDisplacedOne) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(mandel_q(coherent_vector({0.0, 0.0}, 10)), VacuumState);
}

TEST_CASE("skew information") {
  CHECK(skew_information(coherent_vector({2.0, -1.0})) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(skew_information(fock_basis_vector(1, 20)) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(skew_information(kDisplacedOne) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("quadrature squeezing") {
  const FockVector coh = coherent_vector({1.1, 0.7});
  for (double angle : {0.0, 0.3, kPi / 2.0, 2.5})
    CHECK(std::abs(quadrature_squeezing(coh, {angle})) < 1e-12);

  for (double angle : {0.0, 1.0, kPi / 2.0})
    CHECK(quadrature_squeezing(fock_basis_vector(1, 20), {angle}) ==
          doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("squeezing appears for the zero quadrature at eps = 0.75") {
    bool found_negative = false;
    for (double r = 0.1; r <= 6.0; r += 0.1) {
      const double s = quadrature_squeezing(build_hcs_fock({0.75, 0.0, 0.0, {r, 0.0}}), {0.0});
      if (s < -1e-6) found_negative = true;
    }
    CHECK(found_negative);
  }

  SUBCASE("angle scan") {
    const QuadratureScanResult flat = quadrature_min_scan(fock_basis_vector(1, 20), 16);
    CHECK(flat.value == doctest::Approx(1.0).epsilon(1e-12));

    const QuadratureScanResult coh_scan = quadrature_min_scan(coh, 16);
    CHECK(std::abs(coh_scan.value) < 1e-12);

    // scan minimum must sit within a grid step of the closed-form minimizer
    const FockVector squeezed = build_hcs_fock({0.75, 0.0, 0.0, {1.5, 0.0}});
    const MomentSet m = moments(squeezed);
    const QuadratureScanResult best = quadrature_min_scan(squeezed, 64);
    double optimal = quadrature_optimal_angle(m);
    // compare on the half-period [0, pi)
    auto fold = [](double a) {
      double x = std::fmod(a, kPi);
      return x < 0.0 ? x + kPi : x;
    };
    double gap = std::abs(fold(best.angle) - fold(optimal));
    gap = std::min(gap, kPi - gap);
    CHECK(gap <= kPi / 64.0 + 1e-12);
    CHECK(quadrature_squeezing(m, {optimal}) <= best.value + 1e-12);
    // symmetry of real alpha: the minimum is at 0 or pi within a step
    double sym_gap = std::min(fold(best.angle), kPi - fold(best.angle));
    CHECK(sym_gap <= kPi / 64.0 + 1e-12);

    CHECK_THROWS_AS(quadrature_min_scan(coh, 2), std::invalid_argument);
  }
}

TEST_CASE("amplitude-squared squeezing") {
  CHECK(std::abs(as_squeezing_ymin(coherent_vector({1.5, 0.0}))) < 1e-10);
  CHECK(std::abs(as_squeezing_ymin(fock_basis_vector(1, 20))) < 1e-12);
  CHECK(std::abs(s_ass(coherent_vector({1.5, 0.0}))) < 1e-10);
  CHECK(std::abs(s_ass(fock_basis_vector(1, 20))) < 1e-12);

  const FockVector mixed = build_hcs_fock({0.5, 0.0, 0.0, {2.0, 0.0}});
  const double ymin = as_squeezing_ymin(mixed);
  const double sass = s_ass(mixed);
  CHECK(ymin < 0.0);
  CHECK(sass < 0.0);
  CHECK(sass >= -1.0);
}

TEST_CASE("squared-amplitude uncertainty relation on random states") {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 60; ++trial) {
    const UncertaintyY u = amplitude_squared_uncertainty(build_hcs_fock(random_params(gen)));
    CHECK(u.dy1 * u.dy2 >= u.bound - 1e-9);
  }
}

TEST_CASE("wigner grids") {
  SUBCASE("coherent grid: gaussian peak, unit mass, no negativity") {
    const HcsParams p{1.0, 0.0, 0.0, {0.0, 0.0}};
    const WignerGrid g = wigner_grid(p, default_bounds(p.alpha), 161, 161);
    const NegativityReport rep = negativity_report(g);
    double peak = g.values.front();
    for (double v : g.values) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(grid_integral(g) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.negative_volume <= 1e-10);
  }

  SUBCASE("single-photon grid: ring with the deepest dip at the origin") {
    const HcsParams p{0.0, 0.0, 0.0, {0.0, 0.0}};
    const WignerGrid g = wigner_grid(p, default_bounds(p.alpha), 161, 161);
    const NegativityReport rep = negativity_report(g);
    CHECK(rep.min_value == doctest::Approx(-2.0 / kPi).epsilon(1e-12));
    CHECK(std::abs(rep.min_location) < 1e-12);
    CHECK(rep.negative_volume > 0.1);
    CHECK(grid_integral(g) == doctest::Approx(1.0).epsilon(1e-3));
  }

  SUBCASE("interference grid has negativity") {
    const HcsParams p{0.75, kPi, 0.0, {2.0, 0.0}};
    const WignerGrid g = wigner_grid(p, default_bounds(p.alpha, 5.0), 161, 161);
    CHECK(negativity_report(g).negative_volume > 0.0);
  }

  SUBCASE("displaced single photon dips to -2/pi near z = 1") {
    const WignerGrid g = wigner_grid(HcsParams{0.5, kPi, 0.0, {1.0, 0.0}},
                                     default_bounds({1.0, 0.0}), 161, 161);
    const NegativityReport rep = negativity_report(g);
    CHECK(rep.min_value == doctest::Approx(-2.0 / kPi).epsilon(1e-3));
    CHECK(std::abs(rep.min_location - Complex{1.0, 0.0}) < 0.1);
  }

  SUBCASE("closed-form and parity-oracle fills agree pointwise") {
    for (const auto& p : {HcsParams{0.5, kPi, 0.0, {1.0, 0.0}},
                          HcsParams{0.25, 1.2, 0.4, {1.5, -0.5}}}) {
      const GridBounds b = default_bounds(p.alpha, 3.0);
      const WignerGrid closed = wigner_grid(p, b, 41, 41, WignerMethod::ClosedForm);
      const WignerGrid oracle = wigner_grid(p, b, 41, 41, WignerMethod::ParityOracle);
      double worst = 0.0;
      for (std::size_t i = 0; i < closed.values.size(); ++i)
        worst = std::max(worst, std::abs(closed.values[i] - oracle.values[i]));
      CHECK(worst < 1e-8);
    }
  }

  SUBCASE("|W| bound holds on random grids") {
    std::mt19937_64 gen(47);
    for (int trial = 0; trial < 10; ++trial) {
      const HcsParams p = random_params(gen);
      const WignerGrid g = wigner_grid(p, default_bounds(p.alpha), 41, 41);
      for (double v : g.values) CHECK(std::abs(v) <= 2.0 / kPi + 1e-9);
    }
  }

  CHECK_THROWS_AS(wigner_grid(HcsParams{}, {0.0, 1.0, 0.0, 1.0}, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(wigner_grid(HcsParams{}, {1.0, 0.0, 0.0, 1.0}, 5, 5), std::invalid_argument);
}

TEST_CASE("metric bounds on random states") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 50; ++trial) {
    const HcsParams p = random_params(gen);
    const FockVector state = build_hcs_fock(p);
    const MomentSet m = moments(state);
    CHECK(mandel_q(m) >= -1.0 - 1e-9);
    CHECK(skew_information(m) >= 0.5 - 1e-9);
    CHECK(s_ass(m) >= -1.0 - 1e-9);
    for (int k = 0; k < 4; ++k)
      CHECK(quadrature_squeezing(m, {kPi * k / 4.0}) >= -0.5 - 1e-9);
  }
}

// The photon-added endpoint drifts toward coherent behavior as |alpha| grows:
// every nonclassicality indicator shrinks roughly like 1/|alpha|^2. At
// |alpha| = 6 the residuals of Q and S_0 are a few times 1e-2, so the test
// pins the decay rate and true magnitudes rather than a flat 1e-2 bound.
TEST_CASE("photon-added endpoint approaches coherent behavior at large alpha") {
  double prev_q = -10.0, prev_s = -10.0;
  for (double r : {3.0, 4.5, 6.0}) {
    const FockVector state = build_hcs_fock({0.0, 0.0, 0.0, {r, 0.0}});
    const MomentSet m = moments(state);
    const double q = mandel_q(m);
    const double s = quadrature_squeezing(m, {0.0});
    CHECK(q < 0.0);
    CHECK(q > prev_q);  // shrinking magnitude
    CHECK(s > prev_s);
    prev_q = q;
    prev_s = s;
  }
  const FockVector state = build_hcs_fock({0.0, 0.0, 0.0, {6.0, 0.0}});
  const MomentSet m = moments(state);
  CHECK(std::abs(mandel_q(m)) < 6e-2);
  CHECK(std::abs(quadrature_squeezing(m, {0.0})) < 3e-2);
  CHECK(std::abs(skew_information(m) - 0.5) < 1e-2);
  const WignerGrid g = wigner_grid(HcsParams{0.0, 0.0, 0.0, {6.0, 0.0}},
                                   default_bounds({6.0, 0.0}), 161, 161);
  CHECK(negativity_report(g).negative_volume < 1e-2);
  // the 1/r^2 decay law
  const MomentSet m3 = moments(build_hcs_fock({0.0, 0.0, 0.0, {3.0, 0.0}}));
  CHECK(mandel_q(m3) / mandel_q(m) == doctest::Approx(4.0).epsilon(0.25));
}
