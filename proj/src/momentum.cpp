#include "oscfluid/momentum.hpp"

#include "oscfluid/continuity.hpp"

namespace oscfluid {

Eigen::VectorXd viscous_force(const Eigen::VectorXd& c_aug, const Basis& basis,
                              const FluidParams& params) {
  return -params.viscous_coeff() * (basis.stiffness * c_aug);
}

Eigen::VectorXd pressure_force(const std::vector<double>& rho, const Basis& basis,
                               const FluidParams& params) {
  Eigen::VectorXd p(basis.n_cells);
  for (int i = 0; i < basis.n_cells; ++i) p[i] = pressure(rho[i], params);
  return basis.dx * (basis.de.transpose() * p);
}

Eigen::VectorXd convective_force(const std::vector<double>& fluxes,
                                 const Eigen::VectorXd& u, const Basis& basis) {
  const int n = basis.n_cells;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.n_modes + 1);
  for (int f = 1; f < n; ++f) {
    const double w = fluxes[f] * 0.5 * (u[f - 1] + u[f]);
    if (w == 0.0) continue;
    for (int a = 1; a <= basis.n_modes; ++a)
      out[a] += w * (basis.e(f, a) - basis.e(f - 1, a));
  }
  return out;  // constant mode gets exactly zero: d_f e_0 = 0
}

Eigen::VectorXd eps_coupling_force(const std::vector<double>& grad,
                                   const Eigen::VectorXd& u, const Basis& basis,
                                   double epsilon) {
  const int n = basis.n_cells;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.n_modes + 1);
  if (epsilon == 0.0) return out;
  for (int f = 1; f < n; ++f) {
    const double w = -epsilon * grad[f] * (u[f] - u[f - 1]);
    if (w == 0.0) continue;
    out[0] += w;  // ebar for the constant mode is 1
    for (int a = 1; a <= basis.n_modes; ++a)
      out[a] += w * 0.5 * (basis.e(f, a) + basis.e(f - 1, a));
  }
  return out;
}

Eigen::VectorXd spring_force(double b, double t, const FluidParams& params,
                             const ForcingSignal& forcing, int n_modes) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_modes + 1);
  out[0] = -params.k_spring * (b - forcing.value(t));
  return out;
}

MomentumAssembly assemble(const std::vector<double>& rho, const Eigen::VectorXd& v_coeffs,
                          double beta, double b, double t, const FluidParams& params,
                          const ForcingSignal& forcing, const Basis& basis) {
  MomentumAssembly out;
  out.mass = assemble_mass(rho, basis);

  Eigen::VectorXd c_aug(basis.n_modes + 1);
  c_aug[0] = beta;
  c_aug.tail(basis.n_modes) = v_coeffs;

  const Eigen::VectorXd u = basis.u_centers(v_coeffs, beta);
  const std::vector<double> vf = basis.v_faces(v_coeffs);
  const std::vector<double> fluxes = upwind_fluxes(rho, vf);
  const std::vector<double> grad = grad_rho(rho, basis.dx);

  out.rhs = viscous_force(c_aug, basis, params) + pressure_force(rho, basis, params) +
            convective_force(fluxes, u, basis) +
            eps_coupling_force(grad, u, basis, params.epsilon) +
            spring_force(b, t, params, forcing, basis.n_modes);
  return out;
}

Eigen::VectorXd momentum_rate(const MomentumAssembly& assembly) {
  return assembly.mass.solve(assembly.rhs);
}

double boundary_stress(const std::vector<double>& rho, const Eigen::VectorXd& v_coeffs,
                       const FluidParams& params, const Basis& basis) {
  const int n = basis.n_cells;
  const double rho_left = 1.5 * rho[0] - 0.5 * rho[1];
  const double rho_right = 1.5 * rho[n - 1] - 0.5 * rho[n - 2];
  const double t_left = stress_1d(basis.dv_at_left(v_coeffs), std::max(rho_left, 0.0), params);
  const double t_right = stress_1d(basis.dv_at_right(v_coeffs), std::max(rho_right, 0.0), params);
  return t_right - t_left;
}

}  // namespace oscfluid
