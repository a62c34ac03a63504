#ifndef OSCFLUID_TYPES_HPP_
#define OSCFLUID_TYPES_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscfluid {

/// Thrown when a parameter set or config file violates a model invariant.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a density field loses the strict positivity the mass
/// operator and the pressure law require.
class SingularDensityError : public std::runtime_error {
 public:
  explicit SingularDensityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the transport step when the advective CFL precondition fails;
/// the caller is expected to halve dt and retry.
class CflError : public std::runtime_error {
 public:
  explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

/// Physical and discretization constants for one run.
///
/// The fluid is barotropic with total pressure a*rho^gamma + delta*rho^8;
/// epsilon is the parabolic regularization of the continuity equation.
/// The 1D viscous stress coefficient is (lambda + 2 mu).
struct FluidParams {
  double mu = 1.0;         // shear viscosity, > 0
  double lambda = 0.0;     // second viscosity, lambda + (2/3) mu > 0
  double a = 1.0;          // pressure coefficient, >= 0 (0 in rigid-limit studies)
  double gamma = 2.0;      // adiabatic exponent, > 1
  double k_spring = 1.0;   // spring stiffness, > 0
  double epsilon = 0.0;    // artificial viscosity, >= 0
  double delta = 0.0;      // artificial pressure coefficient, >= 0
  double L = 1.0;          // domain length, > 0
  int n_modes = 16;        // Galerkin dimension, >= 1
  int n_cells = 256;       // density grid size, >= 2
  double dt = 1e-4;        // time step, > 0
  double fp_tol = 1e-10;   // fixed-point tolerance, > 0
  int fp_max_iter = 50;    // iteration cap, >= 1

  double viscous_coeff() const { return lambda + 2.0 * mu; }
  bool theorem_regime() const { return gamma > 1.5; }

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

/// Prescribed motion of the spring anchor.  f(t) and fdot(t) must be
/// evaluable on the whole run interval; sampled signals are C^1
/// (cubic Hermite) and reject queries outside their sample range.
class ForcingSignal {
 public:
  enum class Kind { kZero, kSinusoid, kSampled };

  ForcingSignal() : kind_(Kind::kZero) {}

  static ForcingSignal zero() { return ForcingSignal(); }
  static ForcingSignal sinusoid(double amplitude, double omega, double phase = 0.0);
  static ForcingSignal sampled(std::vector<double> times, std::vector<double> values);

  double value(double t) const;
  double derivative(double t) const;

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  double phase() const { return phase_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

  std::string describe() const;

 private:
  Kind kind_;
  double amplitude_ = 0.0;
  double omega_ = 0.0;
  double phase_ = 0.0;
  std::vector<double> times_;   // strictly increasing
  std::vector<double> values_;
  std::vector<double> slopes_;  // finite-difference Hermite slopes

  int locate(double t) const;
};

/// One time slice of the coupled system.
///
/// rho holds cell-center density samples; v_coeffs are the coefficients of
/// the relative velocity v in the Dirichlet eigenbasis, so the reconstructed
/// v vanishes at both walls and u = v + beta satisfies the no-slip condition.
struct FluidState {
  double t = 0.0;
  std::vector<double> rho;
  Eigen::VectorXd v_coeffs;
  double b = 0.0;     // container displacement
  double beta = 0.0;  // container velocity db/dt

  double min_rho() const;
  double max_rho() const;
};

/// Per-step values of every term in the energy balance, plus the mass and
/// momentum books.  All integrals use the midpoint rule on the cell grid;
/// the eps-dissipation uses face differences of the pressure-potential
/// derivative, which keeps it nonnegative for any positive density.
struct EnergyLedgerRow {
  double t = 0.0;
  double kinetic = 0.0;               // int 1/2 rho u^2
  double pressure_potential = 0.0;    // int a/(gamma-1) rho^gamma
  double artificial_potential = 0.0;  // int (delta/7) rho^8
  double spring = 0.0;                // (k/2) b^2
  double dissipation_visc = 0.0;      // int S(v') v'
  double dissipation_eps = 0.0;       // int (eps a gamma rho^(gamma-2) + 8 eps delta rho^6) |rho'|^2
  double power_in = 0.0;              // k beta f(t)
  double mass = 0.0;                  // int rho
  double total_momentum = 0.0;        // int rho u

  double total_energy() const {
    return kinetic + pressure_potential + artificial_potential + spring;
  }
};

}  // namespace oscfluid

#endif  // OSCFLUID_TYPES_HPP_
