#include "oscfluid/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oscfluid {

std::vector<double> upwind_fluxes(const std::vector<double>& rho,
                                  const std::vector<double>& v_face) {
  const int n = static_cast<int>(rho.size());
  std::vector<double> flux(n + 1, 0.0);
  for (int f = 1; f < n; ++f) {
    const double v = v_face[f];
    flux[f] = v * (v >= 0.0 ? rho[f - 1] : rho[f]);
  }
  return flux;
}

std::vector<double> grad_rho(const std::vector<double>& rho, double dx) {
  const int n = static_cast<int>(rho.size());
  std::vector<double> g(n + 1, 0.0);
  for (int f = 1; f < n; ++f) g[f] = (rho[f] - rho[f - 1]) / dx;
  return g;
}

double total_mass(const std::vector<double>& rho, double dx) {
  double s = 0.0;
  for (double r : rho) s += r;
  return s * dx;
}

namespace {

// Thomas solve of (I - eps dt L_N) x = rhs with the zero-flux Neumann
// Laplacian; the matrix is strictly diagonally dominant.
std::vector<double> implicit_diffusion(const std::vector<double>& rhs, double eps_dt,
                                       double dx) {
  const int n = static_cast<int>(rhs.size());
  const double w = eps_dt / (dx * dx);
  std::vector<double> diag(n), upper(n - 1), x(rhs);
  for (int i = 0; i < n; ++i) {
    const double links = (i > 0 ? 1.0 : 0.0) + (i < n - 1 ? 1.0 : 0.0);
    diag[i] = 1.0 + w * links;
  }
  for (int i = 0; i < n - 1; ++i) upper[i] = -w;
  // Forward elimination (sub-diagonal equals the upper one).
  for (int i = 1; i < n; ++i) {
    const double m = -w / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    x[i] -= m * x[i - 1];
  }
  x[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - upper[i] * x[i + 1]) / diag[i];
  return x;
}

}  // namespace

ContinuityResult continuity_step(const std::vector<double>& rho,
                                 const std::vector<double>& v_face, double dt,
                                 double epsilon, double dx) {
  const int n = static_cast<int>(rho.size());
  if (static_cast<int>(v_face.size()) != n + 1)
    throw ConfigError("v_face must have n_cells + 1 entries");
  if (v_face.front() != 0.0 || v_face.back() != 0.0)
    throw ConfigError("v must vanish at the boundary faces");

  double min_rho = rho[0], vmax = 0.0;
  for (double r : rho) min_rho = std::min(min_rho, r);
  if (!(min_rho > 0.0))
    throw SingularDensityError("continuity step needs min rho > 0");
  for (double v : v_face) vmax = std::max(vmax, std::fabs(v));

  ContinuityResult out;
  out.cfl_ratio = vmax * dt / dx;
  if (out.cfl_ratio > 1.0)
    throw CflError("CFL ratio " + std::to_string(out.cfl_ratio) + " exceeds 1");

  out.fluxes = upwind_fluxes(rho, v_face);
  std::vector<double> star(n);
  const double r = dt / dx;
  for (int i = 0; i < n; ++i) star[i] = rho[i] - r * (out.fluxes[i + 1] - out.fluxes[i]);

  out.rho = (epsilon > 0.0) ? implicit_diffusion(star, epsilon * dt, dx) : std::move(star);

  for (double v : out.rho)
    if (!(v > 0.0))
      throw SingularDensityError(
          "continuity step produced nonpositive density despite CFL precondition");
  return out;
}

}  // namespace oscfluid
