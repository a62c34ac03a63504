#include "oscfluid/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "oscfluid/continuity.hpp"
#include "oscfluid/model.hpp"

namespace oscfluid {

TestFunction TestFunction::interior_bump(double horizon) {
  TestFunction f;
  f.horizon = horizon;
  f.chi_constant = false;
  return f;
}

TestFunction TestFunction::constant_in_space(double horizon) {
  TestFunction f;
  f.horizon = horizon;
  f.chi_constant = true;
  return f;
}

double TestFunction::theta(double t) const {
  if (t >= horizon) return 0.0;
  const double s = t / horizon;
  const double q = 1.0 - s * s;
  return q * q * q;
}

double TestFunction::dtheta(double t) const {
  if (t >= horizon) return 0.0;
  const double s = t / horizon;
  const double q = 1.0 - s * s;
  return -6.0 * s / horizon * q * q;
}

double TestFunction::chi(double x, double L) const {
  if (chi_constant) return 1.0;
  const double g = x * (L - x);
  const double L2 = L * L;
  return 64.0 * g * g * g / (L2 * L2 * L2);
}

double TestFunction::dchi(double x, double L) const {
  if (chi_constant) return 0.0;
  const double g = x * (L - x);
  const double L2 = L * L;
  return 64.0 * 3.0 * g * g * (L - 2.0 * x) / (L2 * L2 * L2);
}

namespace {

struct AuditView {
  const Trajectory& traj;
  Basis basis;
};

AuditView open_for_fields(const Trajectory& traj, const TestFunction& phi) {
  if (!traj.has_fields)
    throw ConfigError("weak residuals need field snapshots (run with keep_fields)");
  if (traj.output_every != 1)
    throw ConfigError("weak residuals need trajectories saved with output_every = 1");
  if (traj.rows.size() < 2) throw ConfigError("trajectory too short to audit");
  if (phi.horizon > traj.rows.back().t + 1e-12)
    throw ConfigError("test-function support exceeds the stored trajectory");
  return {traj, build_basis(traj.params.L, traj.params.n_modes, traj.params.n_cells)};
}

}  // namespace

double weak_continuity_residual(const Trajectory& traj, const TestFunction& phi) {
  AuditView view = open_for_fields(traj, phi);
  const Basis& basis = view.basis;
  const FluidParams& prm = traj.params;
  const int nrows = static_cast<int>(traj.rows.size());

  std::vector<double> chi_c(basis.n_cells), dchi_c(basis.n_cells), dchi_f(basis.n_cells + 1);
  for (int i = 0; i < basis.n_cells; ++i) {
    chi_c[i] = phi.chi(basis.x_centers[i], prm.L);
    dchi_c[i] = phi.dchi(basis.x_centers[i], prm.L);
  }
  for (int f = 0; f <= basis.n_cells; ++f) dchi_f[f] = phi.dchi(basis.x_faces[f], prm.L);

  // A(t) = int rho chi; C(t) = int rho v chi' - eps int rho' chi'.
  auto a_of = [&](int r) {
    double s = 0.0;
    for (int i = 0; i < basis.n_cells; ++i) s += traj.rho_fields[r][i] * chi_c[i];
    return basis.dx * s;
  };
  auto c_of = [&](int r) {
    const Eigen::VectorXd v = basis.v_centers(traj.coeff_fields[r]);
    double s = 0.0;
    for (int i = 0; i < basis.n_cells; ++i) s += traj.rho_fields[r][i] * v[i] * dchi_c[i];
    s *= basis.dx;
    if (prm.epsilon > 0.0) {
      const std::vector<double> g = grad_rho(traj.rho_fields[r], basis.dx);
      double e = 0.0;
      for (int f = 1; f < basis.n_cells; ++f) e += g[f] * dchi_f[f];
      s -= prm.epsilon * e * basis.dx;
    }
    return s;
  };

  double res = a_of(0) * phi.theta(traj.rows[0].t);
  double a_prev = a_of(0);
  for (int r = 0; r + 1 < nrows; ++r) {
    const double t0 = traj.rows[r].t, t1 = traj.rows[r + 1].t;
    if (t0 >= phi.horizon) break;
    const double th0 = phi.theta(t0), th1 = phi.theta(t1);
    const double a_next = a_of(r + 1);
    res += 0.5 * (a_prev + a_next) * (th1 - th0);
    res += (t1 - t0) * 0.5 * (th0 + th1) * c_of(r + 1);
    a_prev = a_next;
  }
  return res;
}

double weak_momentum_residual(const Trajectory& traj, const TestFunction& phi,
                              SpringConvention convention) {
  AuditView view = open_for_fields(traj, phi);
  const Basis& basis = view.basis;
  const FluidParams& prm = traj.params;
  const int nrows = static_cast<int>(traj.rows.size());

  std::vector<double> chi_c(basis.n_cells), dchi_c(basis.n_cells), chi_f(basis.n_cells + 1);
  for (int i = 0; i < basis.n_cells; ++i) {
    chi_c[i] = phi.chi(basis.x_centers[i], prm.L);
    dchi_c[i] = phi.dchi(basis.x_centers[i], prm.L);
  }
  for (int f = 0; f <= basis.n_cells; ++f) chi_f[f] = phi.chi(basis.x_faces[f], prm.L);

  // A = int rho u chi; flux(t) collects the convective, stress and
  // eps-coupling space integrals evaluated on one row.
  auto a_of = [&](int r) {
    const Eigen::VectorXd u = basis.u_centers(traj.coeff_fields[r], traj.rows[r].beta);
    double s = 0.0;
    for (int i = 0; i < basis.n_cells; ++i) s += traj.rho_fields[r][i] * u[i] * chi_c[i];
    return basis.dx * s;
  };
  auto flux_of = [&](int r) {
    const Eigen::VectorXd u = basis.u_centers(traj.coeff_fields[r], traj.rows[r].beta);
    const Eigen::VectorXd v = basis.v_centers(traj.coeff_fields[r]);
    const Eigen::VectorXd dv = basis.dv_centers(traj.coeff_fields[r]);
    double conv = 0.0, stress = 0.0;
    if (!phi.chi_constant) {
      for (int i = 0; i < basis.n_cells; ++i) {
        const double rho = traj.rho_fields[r][i];
        conv += rho * u[i] * v[i] * dchi_c[i];
        stress += (prm.viscous_coeff() * dv[i] - pressure(rho, prm)) * dchi_c[i];
      }
      conv *= basis.dx;
      stress *= basis.dx;
    }
    double eps_term = 0.0;
    if (prm.epsilon > 0.0) {
      const std::vector<double> g = grad_rho(traj.rho_fields[r], basis.dx);
      for (int f = 1; f < basis.n_cells; ++f)
        eps_term += g[f] * (u[f] - u[f - 1]) * chi_f[f];
      eps_term *= prm.epsilon;
    }
    return conv - stress - eps_term;
  };
  auto spring_of = [&](int r) {
    if (phi.chi_constant == false) return 0.0;  // b_phi = 0 for interior chi
    const double s = prm.k_spring * (traj.rows[r].b - traj.forcing.value(traj.rows[r].t));
    switch (convention) {
      case SpringConvention::kNewton:
        return -s;
      case SpringConvention::kPrinted:
        return s;
      case SpringConvention::kOmitted:
        return 0.0;
    }
    return 0.0;
  };

  double res = a_of(0) * phi.theta(traj.rows[0].t);
  double a_prev = a_of(0);
  for (int r = 0; r + 1 < nrows; ++r) {
    const double t0 = traj.rows[r].t, t1 = traj.rows[r + 1].t;
    if (t0 >= phi.horizon) break;
    const double th0 = phi.theta(t0), th1 = phi.theta(t1);
    const double thbar = 0.5 * (th0 + th1);
    const double a_next = a_of(r + 1);
    res += 0.5 * (a_prev + a_next) * (th1 - th0);
    res += (t1 - t0) * thbar * (flux_of(r + 1) + spring_of(r + 1));
    a_prev = a_next;
  }
  return res;
}

EnergyAuditReport energy_audit(const Trajectory& traj) {
  if (traj.rows.size() < 2) throw ConfigError("trajectory too short to audit");
  if (traj.output_every != 1)
    throw ConfigError("energy audit needs trajectories saved with output_every = 1");
  EnergyAuditReport report;
  report.steps = static_cast<int>(traj.rows.size()) - 1;
  bool first = true;
  for (std::size_t r = 1; r < traj.rows.size(); ++r) {
    const EnergyLedgerRow& prev = traj.rows[r - 1].ledger;
    const EnergyLedgerRow& cur = traj.rows[r].ledger;
    const double dt = traj.rows[r].t - traj.rows[r - 1].t;
    const double defect = cur.total_energy() - prev.total_energy() +
                          dt * (cur.dissipation_visc + cur.dissipation_eps) -
                          dt * cur.power_in;
    const double tol = CoupledIntegrator::kEnergyTolFactor * (1.0 + prev.total_energy());
    if (defect > tol) ++report.violations;
    if (first || defect > report.max_defect) report.max_defect = defect;
    first = false;
    report.cumulative_defect += defect;
  }
  return report;
}

EntropyReport entropy_monitor(const Trajectory& traj) {
  if (!traj.has_fields)
    throw ConfigError("entropy monitor needs field snapshots (run with keep_fields)");
  const Basis basis = build_basis(traj.params.L, traj.params.n_modes, traj.params.n_cells);
  EntropyReport report;
  const int nrows = static_cast<int>(traj.rows.size());
  report.t.resize(nrows);
  report.entropy.resize(nrows);

  auto entropy_of = [&](int r) {
    double s = 0.0;
    for (double v : traj.rho_fields[r]) s += v * std::log(v);
    return basis.dx * s;
  };
  auto rate_of = [&](int r) {
    // int rho div v + eps int |rho'|^2 / rho, both on row r.
    const Eigen::VectorXd dv = basis.dv_centers(traj.coeff_fields[r]);
    double s = 0.0;
    for (int i = 0; i < basis.n_cells; ++i) s += traj.rho_fields[r][i] * dv[i];
    s *= basis.dx;
    if (traj.params.epsilon > 0.0) {
      const std::vector<double> g = grad_rho(traj.rho_fields[r], basis.dx);
      double e = 0.0;
      for (int f = 1; f < basis.n_cells; ++f) {
        const double mid = 0.5 * (traj.rho_fields[r][f - 1] + traj.rho_fields[r][f]);
        e += g[f] * g[f] / mid;
      }
      s += traj.params.epsilon * e * basis.dx;
    }
    return s;
  };

  for (int r = 0; r < nrows; ++r) {
    report.t[r] = traj.rows[r].t;
    report.entropy[r] = entropy_of(r);
  }
  for (int r = 1; r < nrows; ++r) {
    const double dt = report.t[r] - report.t[r - 1];
    const double defect =
        std::fabs(report.entropy[r] - report.entropy[r - 1] + dt * rate_of(r));
    report.max_balance_defect = std::max(report.max_balance_defect, defect);
  }
  return report;
}

}  // namespace oscfluid
