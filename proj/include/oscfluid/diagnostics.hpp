#ifndef OSCFLUID_DIAGNOSTICS_HPP_
#define OSCFLUID_DIAGNOSTICS_HPP_

#include <vector>

#include "oscfluid/basis.hpp"
#include "oscfluid/integrator.hpp"
#include "oscfluid/types.hpp"

namespace oscfluid {

/// Separable test function phi(t, x) = theta(t) chi(x) with closed-form
/// derivatives.  theta(t) = (1 - (t/T)^2)^3 vanishes at the horizon T;
/// chi is either the interior bump 64 (x (L-x))^3 / L^6 (class i, zero
/// boundary values) or identically 1 (class ii, the Newton-coupled class).
struct TestFunction {
  double horizon = 1.0;
  bool chi_constant = false;

  static TestFunction interior_bump(double horizon);
  static TestFunction constant_in_space(double horizon);

  double theta(double t) const;
  double dtheta(double t) const;
  double chi(double x, double L) const;
  double dchi(double x, double L) const;
};

struct ResidualReport {
  double continuity_residual = 0.0;
  double momentum_residual = 0.0;
  double dt = 0.0;
  double dx = 0.0;
  int n_modes = 0;
};

/// How the spring term enters the weak momentum residual.  kNewton is the
/// convention consistent with the Newton law (residuals converge under
/// refinement); kPrinted flips the spring sign; kOmitted drops the term so
/// the audit isolates the Newton coupling.
enum class SpringConvention { kNewton, kPrinted, kOmitted };

/// Space-time quadrature of the weak continuity form
///   int int rho d_t phi + rho v phi' - eps rho' phi' + int rho_0 phi(0, .).
/// Requires fields saved at every step (output_every == 1).
double weak_continuity_residual(const Trajectory& traj, const TestFunction& phi);

/// Space-time quadrature of the weak momentum form including the boundary
/// spring term (class ii) and the eps-coupling extra term on eps > 0 runs.
double weak_momentum_residual(const Trajectory& traj, const TestFunction& phi,
                              SpringConvention convention = SpringConvention::kNewton);

struct EnergyAuditReport {
  double max_defect = 0.0;        // most positive per-step defect
  double cumulative_defect = 0.0; // E(T) - E(0) + int D - int W (signed)
  int violations = 0;             // steps with defect above tol_E
  int steps = 0;
};

/// Re-derives every per-step energy defect from the stored ledger rows with
/// the integrator's acceptance formula and tolerance.
EnergyAuditReport energy_audit(const Trajectory& traj);

struct EntropyReport {
  std::vector<double> t;
  std::vector<double> entropy;      // int rho log rho
  double max_balance_defect = 0.0;  // per-step defect of the z log z balance
};

EntropyReport entropy_monitor(const Trajectory& traj);

}  // namespace oscfluid

#endif  // OSCFLUID_DIAGNOSTICS_HPP_
