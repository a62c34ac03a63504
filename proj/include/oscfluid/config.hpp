#ifndef OSCFLUID_CONFIG_HPP_
#define OSCFLUID_CONFIG_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "oscfluid/integrator.hpp"
#include "oscfluid/types.hpp"

namespace oscfluid {

/// Flat key = value run configuration with [sections]; unknown keys are
/// errors.  The canonical serialization echoes every key that influences a
/// run, so a trajectory header can be re-fed to reproduce the run exactly.
struct RunConfig {
  FluidParams params;

  // [initial]
  std::string rho_profile = "uniform";  // uniform | cosine
  double rho_value = 1.0;               // uniform value / cosine mean
  double rho_amplitude = 0.0;           // relative cosine amplitude
  int rho_mode = 1;                     // cosine mode count along the slab
  std::vector<double> v0_modes;         // leading Dirichlet-mode amplitudes
  double b0 = 0.0;
  double beta0 = 0.0;

  // [forcing]
  std::string forcing_kind = "zero";  // zero | sinusoid | sampled
  double forcing_amplitude = 0.0;
  double forcing_omega = 1.0;
  double forcing_phase = 0.0;
  std::vector<double> forcing_times;   // sampled kind
  std::vector<double> forcing_values;

  // [run]
  double t_end = 1.0;
  int output_every = 1;
  double dt_min = 0.0;  // 0: dt * 2^-20
  bool deterministic = true;

  // [output]
  std::string output_path;
  std::string fields_path;

  static RunConfig preset(const std::string& name);
  static RunConfig parse(std::istream& in, const std::string& origin = "<stream>");
  static RunConfig parse_file(const std::string& path);

  /// Applies one "section.key=value" override.
  void apply_override(const std::string& assignment);

  void validate() const;
  std::string serialize() const;

  ForcingSignal make_forcing() const;
  std::vector<double> make_rho0() const;
  Eigen::VectorXd make_v0() const;
  RunSpec to_spec() const;
};

/// Sweep description: a base config plus value lists for a subset of
/// {a, gamma, mu, epsilon, delta, omega, k}; runs the cartesian product.
struct SweepConfig {
  RunConfig base;
  std::vector<std::pair<std::string, std::vector<double>>> axes;

  static SweepConfig parse_file(const std::string& path);
  std::vector<RunSpec> expand() const;
};

}  // namespace oscfluid

#endif  // OSCFLUID_CONFIG_HPP_
