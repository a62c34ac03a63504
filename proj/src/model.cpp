#include "oscfluid/model.hpp"

#include <cmath>
#include <string>

namespace oscfluid {

namespace {

void check_rho(double rho_value) {
  if (rho_value < 0.0)
    throw SingularDensityError("negative density " + std::to_string(rho_value));
}

double pow7(double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  return x4 * x2 * x;
}

double pow8(double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  return x4 * x4;
}

}  // namespace

double pressure(double rho_value, const FluidParams& params) {
  check_rho(rho_value);
  return params.a * std::pow(rho_value, params.gamma) + params.delta * pow8(rho_value);
}

double pressure_potential(double rho_value, const FluidParams& params) {
  check_rho(rho_value);
  return params.a / (params.gamma - 1.0) * std::pow(rho_value, params.gamma) +
         params.delta / 7.0 * pow8(rho_value);
}

double pressure_potential_prime(double rho_value, const FluidParams& params) {
  check_rho(rho_value);
  return params.a * params.gamma / (params.gamma - 1.0) * std::pow(rho_value, params.gamma - 1.0) +
         (8.0 / 7.0) * params.delta * pow7(rho_value);
}

double stress_1d(double dv_dx, double rho_value, const FluidParams& params) {
  return params.viscous_coeff() * dv_dx - pressure(rho_value, params);
}

EnergyLedgerRow energy_row(const FluidState& state, const Basis& basis,
                           const FluidParams& params, const ForcingSignal& forcing) {
  EnergyLedgerRow row;
  row.t = state.t;
  const double dx = basis.dx;
  const Eigen::VectorXd u = basis.u_centers(state.v_coeffs, state.beta);
  const Eigen::VectorXd dv = basis.dv_centers(state.v_coeffs);

  double kinetic = 0.0, potential = 0.0, artificial = 0.0, mass = 0.0, momentum = 0.0;
  for (int i = 0; i < basis.n_cells; ++i) {
    const double r = state.rho[i];
    check_rho(r);
    kinetic += 0.5 * r * u[i] * u[i];
    potential += params.a / (params.gamma - 1.0) * std::pow(r, params.gamma);
    artificial += params.delta / 7.0 * pow8(r);
    mass += r;
    momentum += r * u[i];
  }
  row.kinetic = dx * kinetic;
  row.pressure_potential = dx * potential;
  row.artificial_potential = dx * artificial;
  row.mass = dx * mass;
  row.total_momentum = dx * momentum;
  row.spring = 0.5 * params.k_spring * state.b * state.b;
  row.dissipation_visc = params.viscous_coeff() * dx * dv.squaredNorm();

  // (eps/dx) sum_f drho dH'(rho) over interior faces equals
  // eps int H''(rho)|rho'|^2 with H'' evaluated at exact mean-value points.
  double eps_diss = 0.0;
  if (params.epsilon > 0.0) {
    for (int f = 1; f < basis.n_cells; ++f) {
      const double drho = state.rho[f] - state.rho[f - 1];
      const double dhp = pressure_potential_prime(state.rho[f], params) -
                         pressure_potential_prime(state.rho[f - 1], params);
      eps_diss += drho * dhp;
    }
    eps_diss *= params.epsilon / dx;
  }
  row.dissipation_eps = eps_diss;
  row.power_in = params.k_spring * state.beta * forcing.value(state.t);
  return row;
}

}  // namespace oscfluid
