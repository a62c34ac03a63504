#include "oscfluid/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oscfluid {

namespace {

const char* kColumns =
    "t,b,beta,mass,total_momentum,kinetic,pressure_potential,artificial_potential,"
    "spring,dissipation_visc,dissipation_eps,power_in,fp_iterations,fp_residual,"
    "newton_residual,min_rho,max_rho";

std::vector<double> split_numbers(const std::string& line, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
    } catch (const std::exception&) {
      throw ConfigError(where + ": bad numeric field '" + item + "'");
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory(const Trajectory& traj, const RunConfig& config,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "# " << kTrajectoryFormat << "\n";
  out << "# build: " << kBuildId << "\n";
  out << "# config-begin\n";
  std::istringstream cfg(config.serialize());
  std::string line;
  while (std::getline(cfg, line)) out << "# " << line << "\n";
  out << "# config-end\n";
  out << "# columns: " << kColumns << "\n";
  for (const TrajectoryRow& r : traj.rows) {
    out << format_double(r.t) << ',' << format_double(r.b) << ',' << format_double(r.beta)
        << ',' << format_double(r.ledger.mass) << ',' << format_double(r.ledger.total_momentum)
        << ',' << format_double(r.ledger.kinetic) << ','
        << format_double(r.ledger.pressure_potential) << ','
        << format_double(r.ledger.artificial_potential) << ',' << format_double(r.ledger.spring)
        << ',' << format_double(r.ledger.dissipation_visc) << ','
        << format_double(r.ledger.dissipation_eps) << ',' << format_double(r.ledger.power_in)
        << ',' << r.report.fp_iterations << ',' << format_double(r.report.fp_residual) << ','
        << format_double(r.report.newton_residual) << ',' << format_double(r.min_rho) << ','
        << format_double(r.max_rho) << "\n";
  }
  out << "# status: " << to_string(traj.status);
  if (!traj.status_detail.empty()) out << " (" << traj.status_detail << ")";
  out << "\n";
}

void write_fields(const Trajectory& traj, const std::string& path) {
  if (!traj.has_fields)
    throw ConfigError("trajectory holds no field snapshots; rerun with fields enabled");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "# " << kFieldsFormat << "\n";
  out << "# n_cells: " << traj.params.n_cells << "\n";
  out << "# n_modes: " << traj.params.n_modes << "\n";
  out << "# columns: t,rho[...],c[...],beta\n";
  for (std::size_t r = 0; r < traj.rows.size(); ++r) {
    out << format_double(traj.rows[r].t);
    for (double v : traj.rho_fields[r]) out << ',' << format_double(v);
    for (int j = 0; j < traj.coeff_fields[r].size(); ++j)
      out << ',' << format_double(traj.coeff_fields[r][j]);
    out << ',' << format_double(traj.rows[r].beta) << "\n";
  }
  out << "# status: " << to_string(traj.status) << "\n";
}

LoadedTrajectory read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trajectory '" + path + "'");
  std::string line;
  int lineno = 0;
  auto where = [&]() { return path + ":" + std::to_string(lineno); };

  if (!std::getline(in, line) || line != std::string("# ") + kTrajectoryFormat)
    throw ConfigError(path + ":1: format-version mismatch (expected '" +
                      std::string(kTrajectoryFormat) + "')");
  lineno = 1;

  LoadedTrajectory loaded;
  std::ostringstream cfg_text;
  bool in_config = false, config_done = false;
  std::string status_line;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') {
      std::string body = line.size() > 1 ? line.substr(2) : "";
      if (body == "config-begin") {
        in_config = true;
      } else if (body == "config-end") {
        in_config = false;
        config_done = true;
      } else if (in_config) {
        cfg_text << body << "\n";
      } else if (body.rfind("status: ", 0) == 0) {
        status_line = body.substr(8);
      }
      continue;
    }
    if (line.empty()) continue;
    if (!config_done) throw ConfigError(where() + ": data row before config block");
    const std::vector<double> v = split_numbers(line, where());
    if (v.size() != 17)
      throw ConfigError(where() + ": expected 17 columns, got " + std::to_string(v.size()));
    TrajectoryRow r;
    r.t = v[0];
    r.b = v[1];
    r.beta = v[2];
    r.ledger.t = v[0];
    r.ledger.mass = v[3];
    r.ledger.total_momentum = v[4];
    r.ledger.kinetic = v[5];
    r.ledger.pressure_potential = v[6];
    r.ledger.artificial_potential = v[7];
    r.ledger.spring = v[8];
    r.ledger.dissipation_visc = v[9];
    r.ledger.dissipation_eps = v[10];
    r.ledger.power_in = v[11];
    r.report.fp_iterations = static_cast<int>(v[12]);
    r.report.fp_residual = v[13];
    r.report.newton_residual = v[14];
    r.min_rho = v[15];
    r.max_rho = v[16];
    loaded.traj.rows.push_back(r);
  }
  if (!config_done) throw ConfigError(path + ": missing config block");

  std::istringstream cfg_in(cfg_text.str());
  loaded.config = RunConfig::parse(cfg_in, path + " (embedded config)");
  loaded.config.validate();
  loaded.traj.params = loaded.config.params;
  loaded.traj.forcing = loaded.config.make_forcing();
  loaded.traj.output_every = loaded.config.output_every;
  loaded.traj.has_fields = false;

  if (status_line.rfind("completed", 0) == 0) loaded.traj.status = RunStatus::kCompleted;
  else if (status_line.rfind("step-failure", 0) == 0) loaded.traj.status = RunStatus::kStepFailure;
  else if (status_line.rfind("dt-underflow", 0) == 0) loaded.traj.status = RunStatus::kDtUnderflow;
  else throw ConfigError(path + ": missing or unknown status line");
  loaded.traj.status_detail = status_line;
  return loaded;
}

void read_fields(LoadedTrajectory& loaded, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fields file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != std::string("# ") + kFieldsFormat)
    throw ConfigError(path + ":1: format-version mismatch (expected '" +
                      std::string(kFieldsFormat) + "')");
  const int n_cells = loaded.config.params.n_cells;
  const int n_modes = loaded.config.params.n_modes;
  int lineno = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> v =
        split_numbers(line, path + ":" + std::to_string(lineno));
    if (static_cast<int>(v.size()) != 1 + n_cells + n_modes + 1)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(1 + n_cells + n_modes + 1) + " columns, got " +
                        std::to_string(v.size()));
    if (row >= loaded.traj.rows.size())
      throw ConfigError(path + ": more field rows than trajectory rows");
    if (std::fabs(v[0] - loaded.traj.rows[row].t) > 1e-12 * std::max(1.0, std::fabs(v[0])))
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": time does not match trajectory row");
    std::vector<double> rho(v.begin() + 1, v.begin() + 1 + n_cells);
    Eigen::VectorXd c(n_modes);
    for (int j = 0; j < n_modes; ++j) c[j] = v[1 + n_cells + j];
    loaded.traj.rho_fields.push_back(std::move(rho));
    loaded.traj.coeff_fields.push_back(std::move(c));
    ++row;
  }
  if (row != loaded.traj.rows.size())
    throw ConfigError(path + ": fewer field rows than trajectory rows");
  loaded.traj.has_fields = true;
}

}  // namespace oscfluid
