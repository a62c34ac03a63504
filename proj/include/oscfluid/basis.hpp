#ifndef OSCFLUID_BASIS_HPP_
#define OSCFLUID_BASIS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "oscfluid/types.hpp"

namespace oscfluid {

/// Laplace-Dirichlet eigenbasis on [0, L] sampled on a uniform cell grid.
///
/// psi_j(x) = sqrt(2/L) sin(j pi x / L) with eigenvalue lam_j = (j pi / L)^2.
/// The test/trial space is augmented by the constant mode e_0 = 1, which
/// carries the container velocity; augmented vectors are indexed
/// [0] = constant mode, [1..n_modes] = psi coefficients.
///
/// With cell-center sampling the midpoint quadrature of psi_i psi_j is
/// exactly orthonormal for i, j < n_cells, so the psi-block of the
/// unit-density Gram matrix is the identity to rounding error.
struct Basis {
  double L = 1.0;
  int n_modes = 0;
  int n_cells = 0;
  double dx = 0.0;

  std::vector<double> x_centers;  // n_cells midpoints
  std::vector<double> x_faces;    // n_cells + 1 faces, x_faces[0] = 0, back = L

  Eigen::VectorXd lam;       // analytic eigenvalues, index 1..n_modes (0 unused)
  Eigen::MatrixXd e;         // n_cells x (n_modes+1): e(i,0)=1, e(i,j)=psi_j(x_i)
  Eigen::MatrixXd de;        // n_cells x (n_modes+1): derivative samples, de(i,0)=0
  Eigen::MatrixXd e_faces;   // (n_cells+1) x (n_modes+1): samples at faces
  Eigen::MatrixXd gram;      // (n_modes+1)^2, dx * e^T e  (rho == 1 mass matrix)
  Eigen::MatrixXd stiffness; // (n_modes+1)^2, dx * de^T de

  double psi(int j, double x) const;
  double dpsi(int j, double x) const;

  /// Reconstructs u = beta + sum_j c_j psi_j at cell centers.
  Eigen::VectorXd u_centers(const Eigen::VectorXd& v_coeffs, double beta) const;
  /// Reconstructs v at cell centers.
  Eigen::VectorXd v_centers(const Eigen::VectorXd& v_coeffs) const;
  /// Reconstructs v at faces; endpoints are exactly zero.
  std::vector<double> v_faces(const Eigen::VectorXd& v_coeffs) const;
  /// Reconstructs v' at cell centers from the analytic derivatives.
  Eigen::VectorXd dv_centers(const Eigen::VectorXd& v_coeffs) const;
  /// v'(0) and v'(L) from the analytic mode derivatives.
  double dv_at_left(const Eigen::VectorXd& v_coeffs) const;
  double dv_at_right(const Eigen::VectorXd& v_coeffs) const;
};

/// Builds the basis; requires n_cells >= 4 * n_modes (anti-aliasing floor).
Basis build_basis(double L, int n_modes, int n_cells);

/// Density-weighted Gram operator on the augmented space, M[a][b] =
/// int rho e_a e_b dx by midpoint quadrature.  SPD whenever min rho > 0.
struct MassOperator {
  Eigen::MatrixXd m;
  Eigen::LLT<Eigen::MatrixXd> llt;

  /// Solves M x = rhs with one step of iterative refinement.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
};

MassOperator assemble_mass(const std::vector<double>& rho, const Basis& basis);

/// Convenience free function mirroring MassOperator::solve.
Eigen::VectorXd solve_mass(const MassOperator& mass, const Eigen::VectorXd& rhs);

/// Orthogonal projection onto the Dirichlet block: zeroes the constant-mode
/// component.  Idempotent.
Eigen::VectorXd project_dirichlet(const Eigen::VectorXd& augmented);

}  // namespace oscfluid

#endif  // OSCFLUID_BASIS_HPP_
