#include "oscfluid/basis.hpp"

#include <cmath>
#include <string>

namespace oscfluid {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Basis::psi(int j, double x) const {
  return std::sqrt(2.0 / L) * std::sin(j * kPi * x / L);
}

double Basis::dpsi(int j, double x) const {
  return std::sqrt(2.0 / L) * (j * kPi / L) * std::cos(j * kPi * x / L);
}

Eigen::VectorXd Basis::u_centers(const Eigen::VectorXd& v_coeffs, double beta) const {
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n_cells, beta);
  u += e.rightCols(n_modes) * v_coeffs;
  return u;
}

Eigen::VectorXd Basis::v_centers(const Eigen::VectorXd& v_coeffs) const {
  return e.rightCols(n_modes) * v_coeffs;
}

std::vector<double> Basis::v_faces(const Eigen::VectorXd& v_coeffs) const {
  Eigen::VectorXd vf = e_faces.rightCols(n_modes) * v_coeffs;
  std::vector<double> out(n_cells + 1);
  for (int f = 0; f <= n_cells; ++f) out[f] = vf[f];
  out[0] = 0.0;  // Dirichlet endpoints, exact
  out[n_cells] = 0.0;
  return out;
}

Eigen::VectorXd Basis::dv_centers(const Eigen::VectorXd& v_coeffs) const {
  return de.rightCols(n_modes) * v_coeffs;
}

double Basis::dv_at_left(const Eigen::VectorXd& v_coeffs) const {
  double s = 0.0;
  for (int j = 1; j <= n_modes; ++j) s += v_coeffs[j - 1] * dpsi(j, 0.0);
  return s;
}

double Basis::dv_at_right(const Eigen::VectorXd& v_coeffs) const {
  double s = 0.0;
  for (int j = 1; j <= n_modes; ++j) s += v_coeffs[j - 1] * dpsi(j, L);
  return s;
}

Basis build_basis(double L, int n_modes, int n_cells) {
  if (n_modes < 1) throw ConfigError("n_modes must be >= 1");
  if (n_cells < 4 * n_modes)
    throw ConfigError("n_cells = " + std::to_string(n_cells) +
                      " is below the anti-aliasing floor 4*n_modes = " +
                      std::to_string(4 * n_modes));
  Basis b;
  b.L = L;
  b.n_modes = n_modes;
  b.n_cells = n_cells;
  b.dx = L / n_cells;

  b.x_centers.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) b.x_centers[i] = (i + 0.5) * b.dx;
  b.x_faces.resize(n_cells + 1);
  for (int f = 0; f <= n_cells; ++f) b.x_faces[f] = f * b.dx;
  b.x_faces[n_cells] = L;

  b.lam = Eigen::VectorXd::Zero(n_modes + 1);
  for (int j = 1; j <= n_modes; ++j) b.lam[j] = (j * kPi / L) * (j * kPi / L);

  b.e = Eigen::MatrixXd::Zero(n_cells, n_modes + 1);
  b.de = Eigen::MatrixXd::Zero(n_cells, n_modes + 1);
  b.e_faces = Eigen::MatrixXd::Zero(n_cells + 1, n_modes + 1);
  b.e.col(0).setOnes();
  b.e_faces.col(0).setOnes();
  for (int j = 1; j <= n_modes; ++j) {
    for (int i = 0; i < n_cells; ++i) {
      b.e(i, j) = b.psi(j, b.x_centers[i]);
      b.de(i, j) = b.dpsi(j, b.x_centers[i]);
    }
    for (int f = 0; f <= n_cells; ++f) b.e_faces(f, j) = b.psi(j, b.x_faces[f]);
  }

  b.gram = b.dx * (b.e.transpose() * b.e);
  b.stiffness = b.dx * (b.de.transpose() * b.de);
  return b;
}

MassOperator assemble_mass(const std::vector<double>& rho, const Basis& basis) {
  if (static_cast<int>(rho.size()) != basis.n_cells)
    throw ConfigError("density grid size does not match basis n_cells");
  double mn = rho[0];
  for (double r : rho) mn = std::min(mn, r);
  if (!(mn > 0.0))
    throw SingularDensityError("mass operator needs min rho > 0, got " + std::to_string(mn));

  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rho.data(), basis.n_cells);
  MassOperator op;
  op.m = basis.dx * (basis.e.transpose() * w.asDiagonal() * basis.e);
  op.llt.compute(op.m);
  if (op.llt.info() != Eigen::Success)
    throw SingularDensityError("SPD factorization of the mass operator failed");
  return op;
}

Eigen::VectorXd MassOperator::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = llt.solve(rhs);
  // One refinement pass; the matrices are small and occasionally ill
  // conditioned when the constant mode is nearly resolved by the sines.
  Eigen::VectorXd r = rhs - m * x;
  x += llt.solve(r);
  return x;
}

Eigen::VectorXd solve_mass(const MassOperator& mass, const Eigen::VectorXd& rhs) {
  return mass.solve(rhs);
}

Eigen::VectorXd project_dirichlet(const Eigen::VectorXd& augmented) {
  Eigen::VectorXd out = augmented;
  if (out.size() > 0) out[0] = 0.0;
  return out;
}

}  // namespace oscfluid
