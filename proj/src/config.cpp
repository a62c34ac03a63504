#include "oscfluid/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace oscfluid {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value '" + v + "' for key " + key);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value '" + v + "' for key " + key);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("invalid boolean value '" + v + "' for key " + key);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, key));
  }
  return out;
}

std::string join_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt17(v[i]);
  }
  return out;
}

}  // namespace

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = key.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override key '" + key + "' must be qualified as section.key");
  const std::string section = key.substr(0, dot);
  key = key.substr(dot + 1);

  auto bad_key = [&]() {
    throw ConfigError("unknown key '" + section + "." + key + "'");
  };

  if (section == "fluid") {
    if (key == "mu") params.mu = parse_double(value, key);
    else if (key == "lambda") params.lambda = parse_double(value, key);
    else if (key == "a") params.a = parse_double(value, key);
    else if (key == "gamma") params.gamma = parse_double(value, key);
    else if (key == "k") params.k_spring = parse_double(value, key);
    else if (key == "epsilon") params.epsilon = parse_double(value, key);
    else if (key == "delta") params.delta = parse_double(value, key);
    else if (key == "L") params.L = parse_double(value, key);
    else if (key == "n_modes") params.n_modes = parse_int(value, key);
    else if (key == "n_cells") params.n_cells = parse_int(value, key);
    else if (key == "dt") params.dt = parse_double(value, key);
    else if (key == "fp_tol") params.fp_tol = parse_double(value, key);
    else if (key == "fp_max_iter") params.fp_max_iter = parse_int(value, key);
    else bad_key();
  } else if (section == "initial") {
    if (key == "rho_profile") {
      if (value != "uniform" && value != "cosine")
        throw ConfigError("rho_profile must be 'uniform' or 'cosine', got '" + value + "'");
      rho_profile = value;
    } else if (key == "rho_value") rho_value = parse_double(value, key);
    else if (key == "rho_amplitude") rho_amplitude = parse_double(value, key);
    else if (key == "rho_mode") rho_mode = parse_int(value, key);
    else if (key == "v0_modes") v0_modes = parse_list(value, key);
    else if (key == "b0") b0 = parse_double(value, key);
    else if (key == "beta0") beta0 = parse_double(value, key);
    else bad_key();
  } else if (section == "forcing") {
    if (key == "kind") {
      if (value != "zero" && value != "sinusoid" && value != "sampled")
        throw ConfigError("forcing kind must be zero|sinusoid|sampled, got '" + value + "'");
      forcing_kind = value;
    } else if (key == "amplitude") forcing_amplitude = parse_double(value, key);
    else if (key == "omega") forcing_omega = parse_double(value, key);
    else if (key == "phase") forcing_phase = parse_double(value, key);
    else if (key == "times") forcing_times = parse_list(value, key);
    else if (key == "values") forcing_values = parse_list(value, key);
    else if (key == "file") {
      std::ifstream in(value);
      if (!in) throw ConfigError("cannot open forcing file '" + value + "'");
      forcing_times.clear();
      forcing_values.clear();
      std::string line;
      while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t, v;
        if (!(ls >> t >> v))
          throw ConfigError("forcing file '" + value + "': bad line '" + line + "'");
        forcing_times.push_back(t);
        forcing_values.push_back(v);
      }
    } else bad_key();
  } else if (section == "run") {
    if (key == "t_end") t_end = parse_double(value, key);
    else if (key == "output_every") output_every = parse_int(value, key);
    else if (key == "dt_min") dt_min = parse_double(value, key);
    else if (key == "deterministic") {
      deterministic = parse_bool(value, key);
      if (!deterministic)
        throw ConfigError("run.deterministic is fixed at true; randomized runs are unsupported");
    } else bad_key();
  } else if (section == "output") {
    if (key == "path") output_path = value;
    else if (key == "fields_path") fields_path = value;
    else bad_key();
  } else {
    throw ConfigError("unknown section '" + section + "'");
  }
}

RunConfig RunConfig::parse(std::istream& in, const std::string& origin) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value, got '" +
                        line + "'");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": key outside any [section]: '" + line + "'");
    try {
      cfg.apply_override(section + "." + trim(line.substr(0, eq)) + "=" +
                         trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

void RunConfig::validate() const {
  params.validate();
  if (rho_profile == "uniform") {
    if (!(rho_value > 0.0)) throw ConfigError("initial.rho_value must be > 0");
  } else if (rho_profile == "cosine") {
    if (!(rho_value * (1.0 - std::fabs(rho_amplitude)) > 0.0))
      throw ConfigError("cosine profile would not be strictly positive");
    if (rho_mode < 1) throw ConfigError("initial.rho_mode must be >= 1");
  } else {
    throw ConfigError("unknown rho_profile '" + rho_profile + "'");
  }
  if (static_cast<int>(v0_modes.size()) > params.n_modes)
    throw ConfigError("initial.v0_modes lists more amplitudes than n_modes");
  if (forcing_kind == "sampled" && forcing_times.empty())
    throw ConfigError("sampled forcing needs forcing.times/values (or forcing.file)");
  if (!(t_end > 0.0)) throw ConfigError("run.t_end must be > 0");
  if (output_every < 1) throw ConfigError("run.output_every must be >= 1");
  if (dt_min < 0.0) throw ConfigError("run.dt_min must be >= 0");
  make_forcing();  // validates sample monotonicity
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "[fluid]\n";
  os << "mu = " << fmt17(params.mu) << "\n";
  os << "lambda = " << fmt17(params.lambda) << "\n";
  os << "a = " << fmt17(params.a) << "\n";
  os << "gamma = " << fmt17(params.gamma) << "\n";
  os << "k = " << fmt17(params.k_spring) << "\n";
  os << "epsilon = " << fmt17(params.epsilon) << "\n";
  os << "delta = " << fmt17(params.delta) << "\n";
  os << "L = " << fmt17(params.L) << "\n";
  os << "n_modes = " << params.n_modes << "\n";
  os << "n_cells = " << params.n_cells << "\n";
  os << "dt = " << fmt17(params.dt) << "\n";
  os << "fp_tol = " << fmt17(params.fp_tol) << "\n";
  os << "fp_max_iter = " << params.fp_max_iter << "\n";
  os << "[initial]\n";
  os << "rho_profile = " << rho_profile << "\n";
  os << "rho_value = " << fmt17(rho_value) << "\n";
  os << "rho_amplitude = " << fmt17(rho_amplitude) << "\n";
  os << "rho_mode = " << rho_mode << "\n";
  if (!v0_modes.empty()) os << "v0_modes = " << join_list(v0_modes) << "\n";
  os << "b0 = " << fmt17(b0) << "\n";
  os << "beta0 = " << fmt17(beta0) << "\n";
  os << "[forcing]\n";
  os << "kind = " << forcing_kind << "\n";
  if (forcing_kind == "sinusoid") {
    os << "amplitude = " << fmt17(forcing_amplitude) << "\n";
    os << "omega = " << fmt17(forcing_omega) << "\n";
    os << "phase = " << fmt17(forcing_phase) << "\n";
  } else if (forcing_kind == "sampled") {
    os << "times = " << join_list(forcing_times) << "\n";
    os << "values = " << join_list(forcing_values) << "\n";
  }
  os << "[run]\n";
  os << "t_end = " << fmt17(t_end) << "\n";
  os << "output_every = " << output_every << "\n";
  os << "dt_min = " << fmt17(dt_min) << "\n";
  os << "deterministic = true\n";
  return os.str();
}

ForcingSignal RunConfig::make_forcing() const {
  if (forcing_kind == "zero") return ForcingSignal::zero();
  if (forcing_kind == "sinusoid")
    return ForcingSignal::sinusoid(forcing_amplitude, forcing_omega, forcing_phase);
  return ForcingSignal::sampled(forcing_times, forcing_values);
}

std::vector<double> RunConfig::make_rho0() const {
  std::vector<double> rho(params.n_cells, rho_value);
  if (rho_profile == "cosine") {
    const double dx = params.L / params.n_cells;
    for (int i = 0; i < params.n_cells; ++i) {
      const double x = (i + 0.5) * dx;
      rho[i] = rho_value * (1.0 + rho_amplitude * std::cos(rho_mode * kPi * x / params.L));
    }
  }
  return rho;
}

Eigen::VectorXd RunConfig::make_v0() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(params.n_modes);
  for (std::size_t j = 0; j < v0_modes.size(); ++j) v[j] = v0_modes[j];
  return v;
}

RunSpec RunConfig::to_spec() const {
  validate();
  RunSpec spec;
  spec.params = params;
  spec.forcing = make_forcing();
  spec.rho0 = make_rho0();
  spec.v0 = make_v0();
  spec.b0 = b0;
  spec.beta0 = beta0;
  spec.t_end = t_end;
  spec.output_every = output_every;
  return spec;
}

RunConfig RunConfig::preset(const std::string& name) {
  RunConfig cfg;
  if (name == "equilibrium") {
    cfg.params = FluidParams{};
    cfg.params.epsilon = 1e-3;
    cfg.params.delta = 1e-4;
    cfg.t_end = 1.0;
  } else if (name == "free-decay") {
    cfg.params = FluidParams{};
    cfg.params.epsilon = 1e-3;
    cfg.params.delta = 1e-4;
    cfg.b0 = 0.1;
    cfg.t_end = 20.0;
  } else if (name == "forced") {
    cfg.params = FluidParams{};
    cfg.params.epsilon = 1e-3;
    cfg.params.delta = 1e-4;
    cfg.forcing_kind = "sinusoid";
    cfg.forcing_amplitude = 0.05;
    cfg.forcing_omega = 1.0;
    cfg.t_end = 20.0;
  } else {
    throw ConfigError("unknown preset '" + name +
                      "' (available: equilibrium, free-decay, forced)");
  }
  return cfg;
}

SweepConfig SweepConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep config '" + path + "'");
  SweepConfig sweep;
  std::ostringstream base_text;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      if (section != "sweep") base_text << t << "\n";
      continue;
    }
    if (section == "sweep") {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(t.substr(0, eq));
      if (key.rfind("axis.", 0) != 0)
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": sweep section only accepts axis.<param> keys");
      key = key.substr(5);
      static const char* allowed[] = {"a", "gamma", "mu", "epsilon", "delta", "omega", "k"};
      bool ok = false;
      for (const char* s : allowed) ok = ok || key == s;
      if (!ok)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unsupported sweep axis '" +
                          key + "'");
      sweep.axes.emplace_back(key, parse_list(trim(t.substr(eq + 1)), key));
      if (sweep.axes.back().second.empty())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": empty axis value list");
    } else {
      base_text << t << "\n";
    }
  }
  std::istringstream base_in(base_text.str());
  sweep.base = RunConfig::parse(base_in, path);
  return sweep;
}

std::vector<RunSpec> SweepConfig::expand() const {
  std::vector<RunSpec> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  auto emit = [&]() {
    RunConfig cfg = base;
    std::string label;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& name = axes[a].first;
      const double value = axes[a].second[idx[a]];
      if (!label.empty()) label += " ";
      label += name + "=" + fmt17(value);
      if (name == "a") cfg.params.a = value;
      else if (name == "gamma") cfg.params.gamma = value;
      else if (name == "mu") cfg.params.mu = value;
      else if (name == "epsilon") cfg.params.epsilon = value;
      else if (name == "delta") cfg.params.delta = value;
      else if (name == "k") cfg.params.k_spring = value;
      else if (name == "omega") cfg.forcing_omega = value;
    }
    RunSpec spec = cfg.to_spec();
    spec.label = label;
    out.push_back(std::move(spec));
  };
  if (axes.empty()) {
    emit();
    return out;
  }
  while (true) {
    emit();
    std::size_t a = 0;
    while (a < axes.size()) {
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
      ++a;
    }
    if (a == axes.size()) break;
  }
  return out;
}

}  // namespace oscfluid
