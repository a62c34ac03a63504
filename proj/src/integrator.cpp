#include "oscfluid/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "oscfluid/continuity.hpp"
#include "oscfluid/metrics.hpp"

namespace oscfluid {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kStepFailure:
      return "step-failure";
    case RunStatus::kDtUnderflow:
      return "dt-underflow";
  }
  return "unknown";
}

CoupledIntegrator::CoupledIntegrator(const FluidParams& params, ForcingSignal forcing)
    : params_(params), forcing_(std::move(forcing)) {
  params_.validate();
  basis_ = build_basis(params_.L, params_.n_modes, params_.n_cells);
}

FluidState CoupledIntegrator::make_state(const std::vector<double>& rho,
                                         const Eigen::VectorXd& v_coeffs, double b,
                                         double beta, double t) const {
  FluidState s;
  s.t = t;
  s.rho = rho.empty() ? std::vector<double>(basis_.n_cells, 1.0) : rho;
  s.v_coeffs = v_coeffs.size() == 0 ? Eigen::VectorXd::Zero(basis_.n_modes)
                                    : Eigen::VectorXd(v_coeffs);
  if (static_cast<int>(s.rho.size()) != basis_.n_cells)
    throw ConfigError("initial density size does not match n_cells");
  if (s.v_coeffs.size() != basis_.n_modes)
    throw ConfigError("initial v_coeffs size does not match n_modes");
  s.b = b;
  s.beta = beta;
  return s;
}

CoupledIntegrator::Attempt CoupledIntegrator::attempt_step(const FluidState& state,
                                                           const EnergyLedgerRow& row_old,
                                                           double dt) const {
  Attempt out;
  const int nm = basis_.n_modes;
  const double t_new = state.t + dt;

  Eigen::VectorXd c_old(nm + 1);
  c_old[0] = state.beta;
  c_old.tail(nm) = state.v_coeffs;

  const MassOperator mass_old = assemble_mass(state.rho, basis_);
  const Eigen::VectorXd m_old = mass_old.m * c_old;

  Eigen::VectorXd c_iter = c_old;
  Eigen::VectorXd c_next = c_old;
  ContinuityResult cont;
  Eigen::VectorXd f_eps;
  double residual = 0.0, prev1 = -1.0, prev2 = -1.0;
  int iterations = 0;
  bool converged = false;

  while (iterations < params_.fp_max_iter) {
    ++iterations;
    const Eigen::VectorXd v_iter = c_iter.tail(nm);
    const std::vector<double> v_face = basis_.v_faces(v_iter);

    // Advective CFL plus the donor-cell positivity bound on cell outflow.
    double vmax = 0.0, mu_max = 0.0;
    for (double v : v_face) vmax = std::max(vmax, std::fabs(v));
    for (int i = 0; i < basis_.n_cells; ++i) {
      const double outflow = std::max(v_face[i + 1], 0.0) - std::min(v_face[i], 0.0);
      mu_max = std::max(mu_max, outflow);
    }
    if (vmax * dt / basis_.dx > kCflLimit || mu_max * dt / basis_.dx > kCflLimit) {
      out.reason = "cfl";
      return out;
    }

    cont = continuity_step(state.rho, v_face, dt, params_.epsilon, basis_.dx);

    const MassOperator mass_new = assemble_mass(cont.rho, basis_);
    const std::vector<double> grad_new = grad_rho(cont.rho, basis_.dx);
    const Eigen::VectorXd u_iter = basis_.u_centers(v_iter, c_iter[0]);

    f_eps = eps_coupling_force(grad_new, u_iter, basis_, params_.epsilon);
    Eigen::VectorXd rhs = m_old;
    rhs += dt * (pressure_force(cont.rho, basis_, params_) +
                 convective_force(cont.fluxes, u_iter, basis_) + f_eps);
    rhs[0] += dt * (-params_.k_spring * (state.b - forcing_.value(t_new)));

    Eigen::MatrixXd lhs = mass_new.m + dt * params_.viscous_coeff() * basis_.stiffness;
    lhs(0, 0) += params_.k_spring * dt * dt;
    Eigen::LLT<Eigen::MatrixXd> llt(lhs);
    if (llt.info() != Eigen::Success) {
      out.reason = "momentum solve: factorization failed";
      return out;
    }
    c_next = llt.solve(rhs);
    c_next += llt.solve(rhs - lhs * c_next);

    residual = (c_next - c_iter).lpNorm<Eigen::Infinity>();
    c_iter = c_next;
    if (residual <= params_.fp_tol) {
      converged = true;
      break;
    }
    if (prev2 >= 0.0 && residual > prev1 && prev1 > prev2) {
      out.reason = "fixed-point residuals grew over 3 consecutive iterations";
      return out;
    }
    prev2 = prev1;
    prev1 = residual;
  }
  if (!converged) {
    out.reason = "fixed-point iteration cap reached";
    return out;
  }

  FluidState next;
  next.t = t_new;
  next.rho = cont.rho;
  next.v_coeffs = c_next.tail(nm);
  next.beta = c_next[0];
  next.b = state.b + dt * next.beta;

  const EnergyLedgerRow row_new = energy_row(next, basis_, params_, forcing_);
  const double defect = row_new.total_energy() - row_old.total_energy() +
                        dt * (row_new.dissipation_visc + row_new.dissipation_eps) -
                        dt * row_new.power_in;
  const double tol_e = kEnergyTolFactor * (1.0 + row_old.total_energy());
  if (defect > tol_e) {
    out.reason = "energy";
    return out;
  }

  const MassOperator mass_new = assemble_mass(next.rho, basis_);
  const Eigen::VectorXd m_new = mass_new.m * c_next;
  const double spring_new = params_.k_spring * (next.b - forcing_.value(t_new));

  out.accepted = true;
  out.state = std::move(next);
  out.ledger = row_new;
  out.report.dt_used = dt;
  out.report.fp_iterations = iterations;
  out.report.fp_residual = residual;
  out.report.fp_residual_prev = prev1 >= 0.0 ? prev1 : residual;
  out.report.energy_defect = defect;
  out.report.cfl_ratio = cont.cfl_ratio;
  out.report.newton_residual =
      std::fabs(spring_new + boundary_stress(out.state.rho, out.state.v_coeffs, params_, basis_));
  out.report.momentum_defect =
      std::fabs(m_new[0] - m_old[0] + dt * spring_new - dt * f_eps[0]);
  return out;
}

std::pair<FluidState, StepReport> CoupledIntegrator::step(const FluidState& state,
                                                          double dt_attempt,
                                                          double dt_min) const {
  double dt = dt_attempt > 0.0 ? dt_attempt : params_.dt;
  if (dt_min <= 0.0) dt_min = params_.dt * std::pow(2.0, -20);
  const EnergyLedgerRow row_old = energy_row(state, basis_, params_, forcing_);
  std::string last_reason;
  while (dt >= dt_min) {
    Attempt att = attempt_step(state, row_old, dt);
    if (att.accepted) return {att.state, att.report};
    last_reason = att.reason;
    dt *= 0.5;
  }
  throw std::runtime_error("step failed below dt_min (" + last_reason + ") at t=" +
                           std::to_string(state.t));
}

Trajectory CoupledIntegrator::run(const FluidState& initial, const RunOptions& opts) const {
  if (!(opts.t_end > initial.t)) throw ConfigError("t_end must exceed the initial time");
  if (forcing_.kind() == ForcingSignal::Kind::kSampled) {
    forcing_.value(initial.t);  // throws if the sampled range does not cover the run
    forcing_.value(opts.t_end);
  }

  Trajectory traj;
  traj.params = params_;
  traj.forcing = forcing_;
  traj.output_every = std::max(1, opts.output_every);
  traj.has_fields = opts.keep_fields;

  const double dt_min = opts.dt_min > 0.0 ? opts.dt_min : params_.dt * std::pow(2.0, -20);

  FluidState state = initial;
  EnergyLedgerRow row = energy_row(state, basis_, params_, forcing_);

  auto push_row = [&](const EnergyLedgerRow& ledger, const StepReport& report) {
    TrajectoryRow r;
    r.t = state.t;
    r.b = state.b;
    r.beta = state.beta;
    r.min_rho = state.min_rho();
    r.max_rho = state.max_rho();
    r.ledger = ledger;
    r.report = report;
    traj.rows.push_back(r);
    if (traj.has_fields) {
      traj.rho_fields.push_back(state.rho);
      traj.coeff_fields.push_back(state.v_coeffs);
    }
  };

  StepReport initial_report;
  initial_report.newton_residual =
      std::fabs(params_.k_spring * (state.b - forcing_.value(state.t)) +
                boundary_stress(state.rho, state.v_coeffs, params_, basis_));
  push_row(row, initial_report);

  double dt_cur = params_.dt;
  long accepted = 0, good_streak = 0;
  bool last_pushed = true;
  StepReport last_report;
  const double mass0 = row.mass;
  const double t_eps = 1e-12 * std::max(1.0, std::fabs(opts.t_end));

  while (state.t < opts.t_end - t_eps) {
    const double remaining = opts.t_end - state.t;
    if (remaining < dt_min) break;  // within the resolvable distance of t_end
    double dt_try = std::min(dt_cur, remaining);
    Attempt att;
    bool have = false;
    std::string last_reason = "remaining time below dt_min";
    while (dt_try >= dt_min) {
      att = attempt_step(state, row, dt_try);
      if (att.accepted) {
        have = true;
        break;
      }
      last_reason = att.reason;
      dt_try *= 0.5;
    }
    if (!have) {
      traj.status = (last_reason == "cfl" || last_reason == "energy")
                        ? RunStatus::kDtUnderflow
                        : RunStatus::kStepFailure;
      traj.status_detail = "t=" + std::to_string(state.t) + ": " + last_reason;
      return traj;
    }

    state = att.state;
    const double tol_e = kEnergyTolFactor * (1.0 + row.total_energy());
    if (att.report.energy_defect > tol_e) ++traj.energy_violations;
    row = att.ledger;
    traj.mass_drift = std::max(traj.mass_drift, std::fabs(row.mass - mass0) / mass0);
    last_report = att.report;
    ++accepted;
    last_pushed = false;

    // dt recovery: grow back toward the configured step after halvings.
    if (att.report.dt_used < dt_cur * 0.75) {
      dt_cur = att.report.dt_used;
      good_streak = 0;
    } else if (dt_cur < params_.dt) {
      if (++good_streak >= 8) {
        dt_cur = std::min(2.0 * dt_cur, params_.dt);
        good_streak = 0;
      }
    }

    if (accepted % traj.output_every == 0) {
      push_row(row, att.report);
      last_pushed = true;
    }
  }
  if (!last_pushed) push_row(row, last_report);
  traj.status = RunStatus::kCompleted;
  return traj;
}

Trajectory run_spec(const RunSpec& spec, bool keep_fields) {
  CoupledIntegrator integ(spec.params, spec.forcing);
  FluidState init = integ.make_state(spec.rho0, spec.v0, spec.b0, spec.beta0);
  RunOptions opts;
  opts.t_end = spec.t_end;
  opts.output_every = spec.output_every;
  opts.keep_fields = keep_fields;
  return integ.run(init, opts);
}

std::vector<SweepRow> sweep(const std::vector<RunSpec>& cases) {
  std::vector<SweepRow> rows;
  rows.reserve(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    SweepRow row;
    row.index = static_cast<int>(i);
    row.label = cases[i].label;
    try {
      Trajectory traj = run_spec(cases[i]);
      row.status = traj.status;
      const RunMetrics m = compute_metrics(traj);
      row.decay_rate = m.decay_rate;
      row.decay_fit_r2 = m.decay_fit_r2;
      row.envelope_slope = m.envelope_slope;
      row.envelope_fit_r2 = m.envelope_fit_r2;
      row.total_dissipation = m.total_dissipation;
      row.mass_drift = m.mass_drift;
      row.n_peaks = m.n_peaks;
    } catch (const std::exception&) {
      row.status = RunStatus::kStepFailure;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oscfluid
