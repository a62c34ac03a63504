// Command-line front end: simulate / rigid / verify / sweep.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "oscfluid/config.hpp"
#include "oscfluid/diagnostics.hpp"
#include "oscfluid/metrics.hpp"
#include "oscfluid/rigid.hpp"
#include "oscfluid/trajectory_io.hpp"

namespace {

using namespace oscfluid;

int cmd_simulate(const std::string& config_path, const std::string& preset,
                 const std::vector<std::string>& overrides, std::string out_path,
                 std::string fields_path) {
  RunConfig cfg;
  try {
    if (!config_path.empty())
      cfg = RunConfig::parse_file(config_path);
    else if (!preset.empty())
      cfg = RunConfig::preset(preset);
    else
      throw ConfigError("simulate needs --config or --preset");
    for (const std::string& o : overrides) cfg.apply_override(o);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!fields_path.empty()) cfg.fields_path = fields_path;
    if (cfg.output_path.empty()) throw ConfigError("no output path (set --out or output.path)");
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const bool keep_fields = !cfg.fields_path.empty();
    Trajectory traj = run_spec(cfg.to_spec(), keep_fields);
    write_trajectory(traj, cfg, cfg.output_path);
    if (keep_fields) write_fields(traj, cfg.fields_path);
    if (traj.status != RunStatus::kCompleted) {
      std::cerr << "run ended early: " << to_string(traj.status) << " " << traj.status_detail
                << "\n";
      return 2;
    }
    std::cout << "wrote " << cfg.output_path << " (" << traj.rows.size() << " rows)\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }
}

int cmd_rigid(double k, double mass, double amplitude, double omega, double phase, double b0,
              double v0, double t_end, double dt, const std::string& out_path) {
  RigidParams rp;
  rp.k_spring = k;
  rp.mass = mass;
  rp.forcing = amplitude == 0.0 ? ForcingSignal::zero()
                                : ForcingSignal::sinusoid(amplitude, omega, phase);
  rp.b0 = b0;
  rp.v0 = v0;
  try {
    const std::vector<RigidSample> ode = rigid_ode(rp, t_end, dt);
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open '" + out_path + "'");
    out << "# oscfluid-rigid v1\n";
    out << "# k=" << format_double(k) << " M=" << format_double(mass)
        << " A=" << format_double(amplitude) << " omega=" << format_double(omega)
        << " phase=" << format_double(phase) << " b0=" << format_double(b0)
        << " v0=" << format_double(v0) << "\n";
    out << "# columns: t,b_closed,bdot_closed,b_ode,bdot_ode,diff\n";
    double max_diff = 0.0;
    for (const RigidSample& s : ode) {
      const RigidSample cf = rigid_closed_form(s.t, rp);
      const double diff = s.b - cf.b;
      max_diff = std::max(max_diff, std::fabs(diff));
      out << format_double(s.t) << ',' << format_double(cf.b) << ',' << format_double(cf.bdot)
          << ',' << format_double(s.b) << ',' << format_double(s.bdot) << ','
          << format_double(diff) << "\n";
    }
    std::cout << "wrote " << out_path << " (max |b_ode - b_closed| = " << max_diff << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "rigid failed: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const std::string& traj_path, const std::string& fields_path,
               const std::string& json_path, double horizon, double tol_continuity,
               double tol_momentum, const std::string& convention_name) {
  LoadedTrajectory loaded;
  try {
    loaded = read_trajectory(traj_path);
    if (!fields_path.empty()) read_fields(loaded, fields_path);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 1;
  }

  SpringConvention convention = SpringConvention::kNewton;
  if (convention_name == "printed") convention = SpringConvention::kPrinted;
  else if (convention_name == "omitted") convention = SpringConvention::kOmitted;
  else if (convention_name != "newton") {
    std::cerr << "verify: unknown spring convention '" << convention_name << "'\n";
    return 1;
  }

  nlohmann::json report;
  bool ok = true;
  const Trajectory& traj = loaded.traj;
  report["rows"] = traj.rows.size();
  report["status"] = to_string(traj.status);

  EnergyAuditReport energy;
  try {
    energy = energy_audit(traj);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 1;
  }
  report["energy"] = {{"max_defect", energy.max_defect},
                      {"cumulative_defect", energy.cumulative_defect},
                      {"violations", energy.violations},
                      {"steps", energy.steps}};
  std::cout << "energy audit: max defect " << energy.max_defect << ", cumulative "
            << energy.cumulative_defect << ", violations " << energy.violations << "/"
            << energy.steps << (energy.violations == 0 ? "  [PASS]" : "  [FAIL]") << "\n";
  ok = ok && energy.violations == 0;

  const RunMetrics metrics = compute_metrics(traj);
  const double mass_budget = 1e-12 * static_cast<double>(energy.steps) *
                             static_cast<double>(traj.output_every) + 1e-13;
  report["mass_drift"] = metrics.mass_drift;
  std::cout << "mass drift: " << metrics.mass_drift << " (budget " << mass_budget << ")"
            << (metrics.mass_drift <= mass_budget ? "  [PASS]" : "  [FAIL]") << "\n";
  ok = ok && metrics.mass_drift <= mass_budget;

  if (traj.has_fields) {
    try {
      const double T = horizon > 0.0 ? horizon : traj.rows.back().t;
      const TestFunction interior = TestFunction::interior_bump(T);
      const TestFunction boundary = TestFunction::constant_in_space(T);
      const double rc = weak_continuity_residual(traj, interior);
      const double rm_i = weak_momentum_residual(traj, interior, convention);
      const double rm_b = weak_momentum_residual(traj, boundary, convention);
      report["weak_residuals"] = {{"continuity_interior", rc},
                                  {"momentum_interior", rm_i},
                                  {"momentum_boundary", rm_b},
                                  {"horizon", T},
                                  {"spring_convention", convention_name}};
      const bool wc = std::fabs(rc) <= tol_continuity;
      const bool wm = std::fabs(rm_i) <= tol_momentum && std::fabs(rm_b) <= tol_momentum;
      std::cout << "weak continuity residual: " << rc << (wc ? "  [PASS]" : "  [FAIL]") << "\n";
      std::cout << "weak momentum residuals: interior " << rm_i << ", boundary " << rm_b
                << (wm ? "  [PASS]" : "  [FAIL]") << "\n";
      ok = ok && wc && wm;

      const EntropyReport entropy = entropy_monitor(traj);
      report["entropy"] = {{"initial", entropy.entropy.front()},
                           {"final", entropy.entropy.back()},
                           {"max_balance_defect", entropy.max_balance_defect}};
      std::cout << "entropy monitor: int rho log rho " << entropy.entropy.front() << " -> "
                << entropy.entropy.back() << ", balance defect "
                << entropy.max_balance_defect << "\n";
    } catch (const ConfigError& e) {
      std::cerr << "verify: " << e.what() << "\n";
      return 1;
    }
  } else {
    std::cout << "(no fields file: weak residuals and entropy monitor skipped)\n";
  }

  report["pass"] = ok;
  if (!json_path.empty()) {
    std::ofstream jf(json_path);
    jf << report.dump(2) << "\n";
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  try {
    const SweepConfig cfg = SweepConfig::parse_file(config_path);
    const std::vector<RunSpec> cases = cfg.expand();
    const std::vector<SweepRow> rows = sweep(cases);
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open '" + out_path + "'");
    out << "# oscfluid-sweep v1\n";
    out << "# columns: index,label,status,decay_rate,decay_fit_r2,envelope_slope,"
           "envelope_fit_r2,total_dissipation,mass_drift,n_peaks\n";
    for (const SweepRow& r : rows) {
      out << r.index << ',' << '"' << r.label << '"' << ',' << to_string(r.status) << ','
          << format_double(r.decay_rate) << ',' << format_double(r.decay_fit_r2) << ','
          << format_double(r.envelope_slope) << ',' << format_double(r.envelope_fit_r2) << ','
          << format_double(r.total_dissipation) << ',' << format_double(r.mass_drift) << ','
          << r.n_peaks << "\n";
    }
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "sweep failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D compressible-fluid-in-an-oscillator simulator"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the coupled solver");
  std::string sim_config, sim_preset, sim_out, sim_fields;
  std::vector<std::string> sim_set;
  sim->add_option("--config", sim_config, "config file");
  sim->add_option("--preset", sim_preset, "preset name (equilibrium, free-decay, forced)");
  sim->add_option("--set", sim_set, "override section.key=value (repeatable)");
  sim->add_option("--out", sim_out, "trajectory CSV path");
  sim->add_option("--fields", sim_fields, "companion field-snapshot CSV path");

  // rigid
  auto* rig = app.add_subcommand("rigid", "rigid-body reference solutions");
  double r_k = 1.0, r_mass = 1.0, r_amp = 0.0, r_omega = 1.0, r_phase = 0.0, r_b0 = 1.0,
         r_v0 = 0.0, r_tend = 10.0, r_dt = 1e-4;
  std::string r_out = "rigid.csv";
  rig->add_option("--k", r_k, "spring stiffness");
  rig->add_option("--mass", r_mass, "total mass");
  rig->add_option("--amplitude", r_amp, "forcing amplitude (0 disables)");
  rig->add_option("--omega", r_omega, "forcing angular frequency");
  rig->add_option("--phase", r_phase, "forcing phase");
  rig->add_option("--b0", r_b0, "initial displacement");
  rig->add_option("--v0", r_v0, "initial velocity");
  rig->add_option("--t-end", r_tend, "final time");
  rig->add_option("--dt", r_dt, "time step");
  rig->add_option("--out", r_out, "output CSV path");

  // verify
  auto* ver = app.add_subcommand("verify", "post-hoc verifiers on a stored trajectory");
  std::string v_traj, v_fields, v_json, v_convention = "newton";
  double v_horizon = 0.0, v_tol_c = 2e-4, v_tol_m = 2e-3;
  ver->add_option("--input", v_traj, "trajectory CSV")->required();
  ver->add_option("--fields", v_fields, "companion field CSV (enables weak residuals)");
  ver->add_option("--json", v_json, "machine-readable report path");
  ver->add_option("--horizon", v_horizon, "test-function horizon (default: full run)");
  ver->add_option("--tol-continuity", v_tol_c, "weak continuity residual tolerance");
  ver->add_option("--tol-momentum", v_tol_m, "weak momentum residual tolerance");
  ver->add_option("--spring-convention", v_convention, "newton | printed | omitted");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a parameter sweep");
  std::string s_config, s_out = "sweep.csv";
  sw->add_option("--config", s_config, "sweep config file")->required();
  sw->add_option("--out", s_out, "metrics CSV path");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return cmd_simulate(sim_config, sim_preset, sim_set, sim_out, sim_fields);
  if (rig->parsed())
    return cmd_rigid(r_k, r_mass, r_amp, r_omega, r_phase, r_b0, r_v0, r_tend, r_dt, r_out);
  if (ver->parsed())
    return cmd_verify(v_traj, v_fields, v_json, v_horizon, v_tol_c, v_tol_m, v_convention);
  if (sw->parsed()) return cmd_sweep(s_config, s_out);
  return 1;
}
