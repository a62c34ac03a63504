#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscfluid/basis.hpp"
#include "oscfluid/model.hpp"

using namespace oscfluid;

namespace {

FluidParams base_params() {
  FluidParams p;
  p.mu = 1.0;
  p.lambda = 0.0;
  p.a = 1.0;
  p.gamma = 2.0;
  p.k_spring = 1.0;
  p.L = 1.0;
  p.n_modes = 4;
  p.n_cells = 64;
  return p;
}

}  // namespace

TEST_CASE("params validation") {
  FluidParams p = base_params();
  CHECK_NOTHROW(p.validate());

  p.gamma = 0.5;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("gamma"), ConfigError);
  p = base_params();
  p.mu = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("mu"), ConfigError);
  p = base_params();
  p.lambda = -10.0;  // violates lambda + 2/3 mu > 0
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = base_params();
  p.epsilon = -1e-9;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = base_params();
  p.n_cells = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);

  p = base_params();
  p.gamma = 2.0;
  CHECK(p.theorem_regime());
  p.gamma = 1.4;
  CHECK(!p.theorem_regime());
}

TEST_CASE("pressure law") {
  FluidParams p = base_params();

  SUBCASE("zero density") {
    p.delta = 0.3;
    CHECK(pressure(0.0, p) == 0.0);
  }
  SUBCASE("unit case") {
    CHECK(pressure(1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("gamma 1.5 with artificial pressure") {
    p.gamma = 1.5;
    p.delta = 0.01;
    // independent long-double evaluation: 2^1.5 + 0.01 * 2^8
    const long double expected = 2.0L * sqrtl(2.0L) + 0.01L * 256.0L;
    CHECK(pressure(2.0, p) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-15));
  }
  SUBCASE("negative density is a domain error") {
    CHECK_THROWS_AS(pressure(-0.1, p), SingularDensityError);
  }
  SUBCASE("strictly increasing on rho > 0") {
    p.gamma = 1.7;
    p.delta = 0.05;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(1e-3, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
      double r1 = dist(rng), r2 = dist(rng);
      if (r1 > r2) std::swap(r1, r2);
      if (r1 == r2) continue;
      CHECK(pressure(r1, p) < pressure(r2, p));
    }
  }
  SUBCASE("potential derivative is consistent with the pressure") {
    // p = H' rho - H must hold for the barotropic pair.
    p.gamma = 1.8;
    p.delta = 0.02;
    for (double r : {0.3, 1.0, 1.7, 2.4}) {
      const double lhs = pressure_potential_prime(r, p) * r - pressure_potential(r, p);
      CHECK(lhs == doctest::Approx(pressure(r, p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("stress") {
  FluidParams p = base_params();
  SUBCASE("hydrostatic") {
    CHECK(stress_1d(0.0, 1.0, p) == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("vacuum, pure viscous") {
    p.mu = 1.0;
    p.lambda = 0.0;
    CHECK(stress_1d(1.0, 0.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("mixed") {
    p.mu = 1.0;
    p.lambda = 1.0;
    CHECK(stress_1d(0.5, 1.0, p) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("linear in the velocity gradient") {
    const double t0 = stress_1d(0.0, 1.3, p);
    const double t1 = stress_1d(1.0, 1.3, p);
    const double t2 = stress_1d(2.0, 1.3, p);
    CHECK(t2 - t1 == doctest::Approx(t1 - t0).epsilon(1e-13));
  }
}

TEST_CASE("energy row") {
  FluidParams p = base_params();
  const Basis basis = build_basis(p.L, p.n_modes, p.n_cells);
  const ForcingSignal none = ForcingSignal::zero();

  FluidState s;
  s.rho.assign(p.n_cells, 1.0);
  s.v_coeffs = Eigen::VectorXd::Zero(p.n_modes);

  SUBCASE("rest state") {
    const EnergyLedgerRow row = energy_row(s, basis, p, none);
    CHECK(row.kinetic == 0.0);
    CHECK(row.pressure_potential == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(row.spring == 0.0);
    CHECK(row.dissipation_visc == 0.0);
    CHECK(row.dissipation_eps == 0.0);
    CHECK(row.mass == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("uniform translation") {
    s.beta = 2.0;
    const EnergyLedgerRow row = energy_row(s, basis, p, none);
    CHECK(row.kinetic == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(row.total_momentum == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("single-mode dissipation vs the analytic eigenvalue") {
    FluidParams q = base_params();
    q.L = 3.14159265358979323846;
    q.n_cells = 256;
    const Basis bpi = build_basis(q.L, q.n_modes, q.n_cells);
    FluidState sp;
    sp.rho.assign(q.n_cells, 1.0);
    sp.v_coeffs = Eigen::VectorXd::Zero(q.n_modes);
    sp.v_coeffs[0] = 1.0;
    const EnergyLedgerRow row = energy_row(sp, bpi, q, none);
    // (lambda + 2 mu) * int (psi_1')^2 = 2 * lam_1 = 2 on [0, pi]; the
    // midpoint sum of cos^2 at half-integer nodes is exact.
    CHECK(row.dissipation_visc == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("spring term shifts exactly") {
    s.b = 0.7;
    const EnergyLedgerRow row1 = energy_row(s, basis, p, none);
    s.b = 0.7 + 2.0;
    const EnergyLedgerRow row2 = energy_row(s, basis, p, none);
    CHECK(row1.spring == doctest::Approx(0.5 * p.k_spring * 0.49).epsilon(1e-15));
    CHECK(row2.spring == doctest::Approx(0.5 * p.k_spring * 2.7 * 2.7).epsilon(1e-15));
    CHECK(row1.kinetic == row2.kinetic);
    CHECK(row1.pressure_potential == row2.pressure_potential);
    CHECK(row1.dissipation_visc == row2.dissipation_visc);
  }

  SUBCASE("mass and momentum match direct quadrature") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    for (int i = 0; i < p.n_cells; ++i) s.rho[i] = dist(rng);
    for (int j = 0; j < p.n_modes; ++j) s.v_coeffs[j] = dist(rng) - 1.25;
    s.beta = 0.4;
    const EnergyLedgerRow row = energy_row(s, basis, p, none);
    double mass = 0.0, mom = 0.0;
    const Eigen::VectorXd u = basis.u_centers(s.v_coeffs, s.beta);
    for (int i = 0; i < p.n_cells; ++i) {
      mass += s.rho[i] * basis.dx;
      mom += s.rho[i] * u[i] * basis.dx;
    }
    CHECK(row.mass == doctest::Approx(mass).epsilon(1e-15));
    CHECK(row.total_momentum == doctest::Approx(mom).epsilon(1e-15));
  }

  SUBCASE("nonnegative fields on random states") {
    FluidParams q = base_params();
    q.epsilon = 1e-3;
    q.delta = 1e-4;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
      FluidState r;
      r.rho.resize(q.n_cells);
      for (int i = 0; i < q.n_cells; ++i) r.rho[i] = dist(rng);
      r.v_coeffs = Eigen::VectorXd::Zero(q.n_modes);
      for (int j = 0; j < q.n_modes; ++j) r.v_coeffs[j] = dist(rng) - 1.25;
      r.beta = dist(rng) - 1.25;
      r.b = dist(rng) - 1.25;
      const EnergyLedgerRow row = energy_row(r, basis, q, none);
      CHECK(row.kinetic >= 0.0);
      CHECK(row.pressure_potential >= 0.0);
      CHECK(row.artificial_potential >= 0.0);
      CHECK(row.spring >= 0.0);
      CHECK(row.dissipation_visc >= 0.0);
      CHECK(row.dissipation_eps >= 0.0);
      CHECK(row.mass >= 0.0);
    }
  }
}

TEST_CASE("forcing signals") {
  SUBCASE("zero") {
    const ForcingSignal f = ForcingSignal::zero();
    CHECK(f.value(3.0) == 0.0);
    CHECK(f.derivative(3.0) == 0.0);
  }
  SUBCASE("sinusoid") {
    const ForcingSignal f = ForcingSignal::sinusoid(2.0, 3.0, 0.5);
    CHECK(f.value(1.2) == doctest::Approx(2.0 * std::sin(3.0 * 1.2 + 0.5)).epsilon(1e-15));
    CHECK(f.derivative(1.2) ==
          doctest::Approx(6.0 * std::cos(3.0 * 1.2 + 0.5)).epsilon(1e-15));
  }
  SUBCASE("sampled interpolates and rejects out-of-range") {
    const ForcingSignal f = ForcingSignal::sampled({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(f.value(0.0) == doctest::Approx(0.0));
    CHECK(f.value(1.0) == doctest::Approx(1.0));
    CHECK(f.value(0.5) > 0.0);
    CHECK_THROWS_AS(f.value(2.5), ConfigError);
    CHECK_THROWS_AS(f.value(-0.1), ConfigError);
  }
  SUBCASE("sampled needs increasing times") {
    CHECK_THROWS_AS(ForcingSignal::sampled({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}), ConfigError);
  }
}
