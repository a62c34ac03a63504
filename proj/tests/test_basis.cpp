#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscfluid/basis.hpp"

using namespace oscfluid;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_density(int n, std::mt19937& rng, double lo = 0.5,
                                   double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> rho(n);
  for (double& r : rho) r = dist(rng);
  return rho;
}

Eigen::MatrixXd dense_inverse(const MassOperator& op) {
  const int n = static_cast<int>(op.m.rows());
  return op.llt.solve(Eigen::MatrixXd::Identity(n, n));
}

}  // namespace

TEST_CASE("eigenpairs") {
  SUBCASE("unit eigenvalue on [0, pi]") {
    const Basis b = build_basis(kPi, 1, 64);
    CHECK(b.lam[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("analytic eigenvalues on [0, 1]") {
    const Basis b = build_basis(1.0, 3, 64);
    CHECK(b.lam[1] == doctest::Approx(kPi * kPi).epsilon(1e-14));
    CHECK(b.lam[2] == doctest::Approx(4 * kPi * kPi).epsilon(1e-14));
    CHECK(b.lam[3] == doctest::Approx(9 * kPi * kPi).epsilon(1e-14));
  }
  SUBCASE("Dirichlet endpoints") {
    const Basis b = build_basis(2.5, 4, 64);
    for (int j = 1; j <= 4; ++j) {
      CHECK(std::fabs(b.psi(j, 0.0)) <= 1e-15);
      CHECK(std::fabs(b.psi(j, b.L)) <= 1e-12);
    }
  }
  SUBCASE("-psi'' = lam psi by finite differences") {
    const Basis b = build_basis(1.7, 3, 64);
    const double h = 1e-5;
    for (int j = 1; j <= 3; ++j) {
      for (double x : {0.3, 0.9, 1.4}) {
        const double d2 = (b.psi(j, x + h) - 2 * b.psi(j, x) + b.psi(j, x - h)) / (h * h);
        CHECK(-d2 == doctest::Approx(b.lam[j] * b.psi(j, x)).epsilon(1e-5));
        const double d1 = (b.psi(j, x + h) - b.psi(j, x - h)) / (2 * h);
        CHECK(d1 == doctest::Approx(b.dpsi(j, x)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("discrete orthonormality") {
  const Basis b = build_basis(kPi, 2, 64);
  double cross = 0.0, norm1 = 0.0, norm2 = 0.0;
  for (int i = 0; i < b.n_cells; ++i) {
    cross += b.e(i, 1) * b.e(i, 2) * b.dx;
    norm1 += b.e(i, 1) * b.e(i, 1) * b.dx;
    norm2 += b.e(i, 2) * b.e(i, 2) * b.dx;
  }
  CHECK(std::fabs(cross) <= 1e-12);
  CHECK(norm1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));

  // the whole psi-block of the unit-density Gram matrix
  const Basis big = build_basis(1.0, 16, 128);
  for (int i = 1; i <= 16; ++i)
    for (int j = 1; j <= 16; ++j)
      CHECK(std::fabs(big.gram(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("anti-aliasing floor") {
  CHECK_THROWS_AS(build_basis(1.0, 16, 32), ConfigError);
  CHECK_NOTHROW(build_basis(1.0, 16, 64));
}

TEST_CASE("mass operator assembly") {
  SUBCASE("unit density on [0, pi]") {
    const Basis b = build_basis(kPi, 1, 256);
    const MassOperator m = assemble_mass(std::vector<double>(256, 1.0), b);
    CHECK(m.m(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.m(0, 0) == doctest::Approx(kPi).epsilon(1e-12));
    // midpoint quadrature of int psi_1 approaches the analytic 2 sqrt(2/pi)
    CHECK(m.m(0, 1) == doctest::Approx(2.0 * std::sqrt(2.0 / kPi)).epsilon(1e-5));
    CHECK(m.m(0, 1) == doctest::Approx(m.m(1, 0)).epsilon(1e-15));
  }

  SUBCASE("linearity in rho") {
    const Basis b = build_basis(1.0, 4, 64);
    std::mt19937 rng(3);
    const std::vector<double> r1 = random_density(64, rng);
    const std::vector<double> r2 = random_density(64, rng);
    std::vector<double> sum(64);
    for (int i = 0; i < 64; ++i) sum[i] = r1[i] + r2[i];
    const Eigen::MatrixXd lhs = assemble_mass(sum, b).m;
    const Eigen::MatrixXd rhs = assemble_mass(r1, b).m + assemble_mass(r2, b).m;
    CHECK((lhs - rhs).norm() <= 1e-13 * rhs.norm());

    const MassOperator doubled = assemble_mass(std::vector<double>(64, 2.0), b);
    const MassOperator unit = assemble_mass(std::vector<double>(64, 1.0), b);
    CHECK((doubled.m - 2.0 * unit.m).norm() <= 1e-14 * unit.m.norm());
  }

  SUBCASE("nonpositive density is rejected") {
    const Basis b = build_basis(1.0, 2, 16);
    std::vector<double> rho(16, 1.0);
    rho[7] = 0.0;
    CHECK_THROWS_AS(assemble_mass(rho, b), SingularDensityError);
  }

  SUBCASE("spectral lower bound against the Gram matrix") {
    const Basis b = build_basis(1.0, 8, 64);
    std::mt19937 rng(17);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.compute(b.gram);
    const double gram_min = es.eigenvalues().minCoeff();
    for (int trial = 0; trial < 50; ++trial) {
      const std::vector<double> rho = random_density(64, rng);
      double mn = rho[0];
      for (double r : rho) mn = std::min(mn, r);
      es.compute(assemble_mass(rho, b).m);
      CHECK(es.eigenvalues().minCoeff() >= mn * gram_min - 1e-12);
    }
  }
}

TEST_CASE("mass operator solve") {
  const Basis b = build_basis(1.0, 8, 96);
  std::mt19937 rng(23);

  SUBCASE("solve residual contract") {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const MassOperator m = assemble_mass(random_density(96, rng), b);
      Eigen::VectorXd rhs(9);
      for (int i = 0; i < 9; ++i) rhs[i] = dist(rng);
      const Eigen::VectorXd x = solve_mass(m, rhs);
      CHECK((m.m * x - rhs).norm() <= 1e-10 * rhs.norm());
    }
  }

  SUBCASE("constant density scales the unit-density solve") {
    const double c = 3.7;
    const MassOperator mc = assemble_mass(std::vector<double>(96, c), b);
    Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(9, -1.0, 1.0);
    const Eigen::VectorXd x = solve_mass(mc, rhs);
    const Eigen::VectorXd y = b.gram.fullPivLu().solve(rhs);  // dense oracle
    CHECK((x - y / c).norm() <= 1e-10 * y.norm());
  }

  SUBCASE("resolvent identity") {
    for (int trial = 0; trial < 25; ++trial) {
      const MassOperator ma = assemble_mass(random_density(96, rng), b);
      const MassOperator mb = assemble_mass(random_density(96, rng), b);
      const Eigen::MatrixXd inv_a = dense_inverse(ma);
      const Eigen::MatrixXd inv_b = dense_inverse(mb);
      const Eigen::MatrixXd lhs = inv_a - inv_b;
      const Eigen::MatrixXd rhs = inv_b * (mb.m - ma.m) * inv_a;
      CHECK((lhs - rhs).norm() <= 1e-10 * (lhs.norm() + 1e-30));
    }
  }

  SUBCASE("inverse norm bound via the Gram matrix") {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.gram);
    const double gram_inv_norm = 1.0 / es.eigenvalues().minCoeff();
    for (int trial = 0; trial < 25; ++trial) {
      const std::vector<double> rho = random_density(96, rng);
      double mn = rho[0];
      for (double r : rho) mn = std::min(mn, r);
      const MassOperator m = assemble_mass(rho, b);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(m.m);
      const double inv_norm = 1.0 / em.eigenvalues().minCoeff();
      CHECK(inv_norm <= gram_inv_norm / mn * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("dirichlet projection") {
  Eigen::VectorXd aug(4);
  aug << 1.0, 0.0, 0.0, 0.0;
  CHECK(project_dirichlet(aug).norm() == 0.0);

  aug << 0.0, 0.3, -0.7, 2.0;
  CHECK((project_dirichlet(aug) - aug).norm() == 0.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(6);
    for (int i = 0; i < 6; ++i) v[i] = dist(rng);
    const Eigen::VectorXd once = project_dirichlet(v);
    CHECK((project_dirichlet(once) - once).norm() == 0.0);
  }
}
