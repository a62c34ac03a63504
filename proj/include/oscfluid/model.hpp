#ifndef OSCFLUID_MODEL_HPP_
#define OSCFLUID_MODEL_HPP_

#include "oscfluid/basis.hpp"
#include "oscfluid/types.hpp"

namespace oscfluid {

/// Total pressure a rho^gamma + delta rho^8.  Strictly increasing on rho > 0.
double pressure(double rho_value, const FluidParams& params);

/// Pressure potential density H(rho) = a/(gamma-1) rho^gamma + delta/7 rho^8,
/// the convex function with H'(rho) rho - H(rho) = pressure(rho).
double pressure_potential(double rho_value, const FluidParams& params);

/// H'(rho) = a gamma/(gamma-1) rho^(gamma-1) + (8/7) delta rho^7.
double pressure_potential_prime(double rho_value, const FluidParams& params);

/// Total 1D stress T = (lambda + 2 mu) dv/dx - pressure(rho).
double stress_1d(double dv_dx, double rho_value, const FluidParams& params);

/// Evaluates every term of the energy ledger for one state by midpoint
/// quadrature; the eps-dissipation uses face differences of H'(rho) so it is
/// nonnegative for any positive density.
EnergyLedgerRow energy_row(const FluidState& state, const Basis& basis,
                           const FluidParams& params, const ForcingSignal& forcing);

}  // namespace oscfluid

#endif  // OSCFLUID_MODEL_HPP_
