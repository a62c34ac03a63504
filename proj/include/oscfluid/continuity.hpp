#ifndef OSCFLUID_CONTINUITY_HPP_
#define OSCFLUID_CONTINUITY_HPP_

#include <vector>

#include "oscfluid/types.hpp"

namespace oscfluid {

/// Face-based transport machinery for the regularized continuity equation
///   d_t rho + d_x(rho v) = eps d_xx rho,   d_x rho = 0 at both walls.
///
/// Scheme: first-order donor-cell upwind advection (explicit) plus
/// backward-Euler diffusion (tridiagonal solve).  Fluxes vanish at the
/// boundary faces because v does, so total mass telescopes exactly.

/// Donor-cell fluxes F[f] = v[f] * rho_upwind at every face; F[0] and F[n]
/// are zero.  v_face must hold n_cells+1 values with zero endpoints.
std::vector<double> upwind_fluxes(const std::vector<double>& rho,
                                  const std::vector<double>& v_face);

/// Face gradients of a cell field: (rho[i+1]-rho[i])/dx inside, 0 at the
/// boundary faces (Neumann).
std::vector<double> grad_rho(const std::vector<double>& rho, double dx);

struct ContinuityResult {
  std::vector<double> rho;
  double cfl_ratio = 0.0;           // max |v| dt / dx over faces
  std::vector<double> fluxes;       // the donor-cell fluxes actually applied
};

/// One step.  Preconditions: min rho > 0 and cfl_ratio <= 1 (throws CflError
/// otherwise so the caller can halve dt).  Nonpositive output density is a
/// hard logic error and throws SingularDensityError.
ContinuityResult continuity_step(const std::vector<double>& rho,
                                 const std::vector<double>& v_face, double dt,
                                 double epsilon, double dx);

/// Total mass by midpoint quadrature.
double total_mass(const std::vector<double>& rho, double dx);

}  // namespace oscfluid

#endif  // OSCFLUID_CONTINUITY_HPP_
