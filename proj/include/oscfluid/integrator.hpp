#ifndef OSCFLUID_INTEGRATOR_HPP_
#define OSCFLUID_INTEGRATOR_HPP_

#include <string>
#include <utility>
#include <vector>

#include "oscfluid/basis.hpp"
#include "oscfluid/model.hpp"
#include "oscfluid/momentum.hpp"
#include "oscfluid/types.hpp"

namespace oscfluid {

/// Diagnostics of one accepted step.
struct StepReport {
  double dt_used = 0.0;
  int fp_iterations = 0;
  double fp_residual = 0.0;       // last ||Delta(v_coeffs, beta)||_inf
  double fp_residual_prev = 0.0;  // second-to-last, for the contraction check
  double energy_defect = 0.0;     // E_new - E_old + dt (D_visc + D_eps) - dt W, <= tol on acceptance
  double newton_residual = 0.0;   // |k (b - f) + boundary stress|
  double cfl_ratio = 0.0;
  double momentum_defect = 0.0;   // residual of the discrete momentum-law identity
};

enum class RunStatus { kCompleted, kStepFailure, kDtUnderflow };

std::string to_string(RunStatus status);

struct TrajectoryRow {
  double t = 0.0;
  double b = 0.0;
  double beta = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  EnergyLedgerRow ledger;
  StepReport report;
};

/// Time-ordered run output.  Field snapshots (rho, v_coeffs) are kept only
/// when requested; the offline verifiers require them together with
/// output_every == 1.
struct Trajectory {
  FluidParams params;
  ForcingSignal forcing;
  int output_every = 1;
  bool has_fields = false;
  RunStatus status = RunStatus::kCompleted;
  std::string status_detail;
  std::vector<TrajectoryRow> rows;
  std::vector<std::vector<double>> rho_fields;
  std::vector<Eigen::VectorXd> coeff_fields;

  // run-level monitors, filled by CoupledIntegrator::run over every
  // accepted step (not only the stored rows)
  double mass_drift = 0.0;      // max |mass - mass0| / mass0
  int energy_violations = 0;    // accepted steps violating the inequality
};

struct RunOptions {
  double t_end = 1.0;
  int output_every = 1;
  bool keep_fields = false;
  double dt_min = 0.0;  // 0: params.dt * 2^-20
};

/// Advances the coupled system with the alternating fixed-point step:
/// freeze (v, beta), transport the density, reassemble, then a semi-implicit
/// momentum solve (backward Euler in viscosity and spring, explicit
/// convection and pressure), iterated until the coefficient update is below
/// fp_tol.  The momentum update is conservative,
///   M(rho_new) c_new = M(rho_old) c_old + dt F,
/// so the constant-mode row propagates int rho u exactly.
///
/// Step acceptance enforces the discrete energy inequality
///   E_new - E_old + dt (D_visc + D_eps) <= dt W + tol_E,
/// tol_E = 1e-8 (1 + E_old); violations, CFL breaches, and non-contracting
/// iterations all halve dt and retry down to dt_min.
class CoupledIntegrator {
 public:
  CoupledIntegrator(const FluidParams& params, ForcingSignal forcing);

  const Basis& basis() const { return basis_; }
  const FluidParams& params() const { return params_; }
  const ForcingSignal& forcing() const { return forcing_; }

  /// One accepted step (with internal dt halving).  Throws on dt underflow
  /// or fixed-point failure that survives halving.
  std::pair<FluidState, StepReport> step(const FluidState& state, double dt_attempt = 0.0,
                                         double dt_min = 0.0) const;

  Trajectory run(const FluidState& initial, const RunOptions& opts) const;

  /// Builds a FluidState on this integrator's grid.
  FluidState make_state(const std::vector<double>& rho, const Eigen::VectorXd& v_coeffs,
                        double b, double beta, double t = 0.0) const;

  static constexpr double kEnergyTolFactor = 1e-8;
  static constexpr double kCflLimit = 0.95;

 private:
  struct Attempt {
    bool accepted = false;
    std::string reason;
    FluidState state;
    EnergyLedgerRow ledger;
    StepReport report;
  };

  Attempt attempt_step(const FluidState& state, const EnergyLedgerRow& row_old,
                       double dt) const;

  FluidParams params_;
  ForcingSignal forcing_;
  Basis basis_;
};

struct RunSpec {
  FluidParams params;
  ForcingSignal forcing;
  std::vector<double> rho0;     // empty: uniform 1
  Eigen::VectorXd v0;           // empty: zero
  double b0 = 0.0;
  double beta0 = 0.0;
  double t_end = 1.0;
  int output_every = 1;
  std::string label;
};

struct SweepRow {
  int index = 0;
  std::string label;
  RunStatus status = RunStatus::kCompleted;
  double decay_rate = 0.0;       // from log-linear fit of |b| peaks
  double decay_fit_r2 = 0.0;
  double envelope_slope = 0.0;   // from linear fit of |b| peaks
  double envelope_fit_r2 = 0.0;
  double total_dissipation = 0.0;
  double mass_drift = 0.0;       // max relative drift
  int n_peaks = 0;
};

/// Runs every case and extracts run-level metrics; failures are recorded in
/// the row status and do not stop the sweep.
std::vector<SweepRow> sweep(const std::vector<RunSpec>& cases);

/// Executes one RunSpec (shared by sweep and the CLI).
Trajectory run_spec(const RunSpec& spec, bool keep_fields = false);

}  // namespace oscfluid

#endif  // OSCFLUID_INTEGRATOR_HPP_
