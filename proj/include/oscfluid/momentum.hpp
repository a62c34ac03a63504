#ifndef OSCFLUID_MOMENTUM_HPP_
#define OSCFLUID_MOMENTUM_HPP_

#include <Eigen/Dense>
#include <vector>

#include "oscfluid/basis.hpp"
#include "oscfluid/model.hpp"
#include "oscfluid/types.hpp"

namespace oscfluid {

/// Galerkin momentum system tested against {1} u {psi_j}.  The psi rows are
/// the fluid momentum equations; the constant-mode row carries the Newton
/// law, where the boundary stress integral is replaced by the spring force.
///
/// Force conventions (all by midpoint quadrature unless face-based):
///   viscous     -(lambda+2mu) int v' e_a'
///   pressure    +int (a rho^gamma + delta rho^8) e_a'
///   convective  +int rho u v e_a'   (face form: sum_f F_f ubar_f d_f e_a,
///               with F_f the donor-cell fluxes of the transport step)
///   eps-coupling -eps int rho' u' e_a  (face form: -eps sum_f G_f d_f u ebar_af)
///   spring      -k (b - f(t)) on the constant mode only
///
/// The face forms reproduce the transport step's discrete divergence when
/// contracted with the velocity coefficients, which is what makes the
/// kinetic-energy channel of the step identity telescope.
struct MomentumAssembly {
  MassOperator mass;
  Eigen::VectorXd rhs;  // size n_modes + 1, index 0 = constant mode
};

Eigen::VectorXd viscous_force(const Eigen::VectorXd& c_aug, const Basis& basis,
                              const FluidParams& params);

Eigen::VectorXd pressure_force(const std::vector<double>& rho, const Basis& basis,
                               const FluidParams& params);

/// fluxes: donor-cell face fluxes (n_cells+1); u: cell-center samples of u.
Eigen::VectorXd convective_force(const std::vector<double>& fluxes,
                                 const Eigen::VectorXd& u, const Basis& basis);

/// grad: face gradients of rho (n_cells+1); u: cell-center samples of u.
Eigen::VectorXd eps_coupling_force(const std::vector<double>& grad,
                                   const Eigen::VectorXd& u, const Basis& basis,
                                   double epsilon);

Eigen::VectorXd spring_force(double b, double t, const FluidParams& params,
                             const ForcingSignal& forcing, int n_modes);

/// Assembles the mass operator and the full instantaneous force vector at
/// one state.  The convective fluxes are the donor-cell fluxes of (rho, v).
MomentumAssembly assemble(const std::vector<double>& rho, const Eigen::VectorXd& v_coeffs,
                          double beta, double b, double t, const FluidParams& params,
                          const ForcingSignal& forcing, const Basis& basis);

/// Frozen-density rate M^-1 rhs of the augmented coefficients; component 0
/// is the container acceleration, the rest are the psi-mode rates.
Eigen::VectorXd momentum_rate(const MomentumAssembly& assembly);

/// Net boundary stress T(L) - T(0) with outward normals; v' from the
/// analytic mode derivatives, wall densities by second-order one-sided
/// extrapolation.  Depends on v only, never on beta.
double boundary_stress(const std::vector<double>& rho, const Eigen::VectorXd& v_coeffs,
                       const FluidParams& params, const Basis& basis);

}  // namespace oscfluid

#endif  // OSCFLUID_MOMENTUM_HPP_
