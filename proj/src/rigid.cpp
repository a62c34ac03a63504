#include "oscfluid/rigid.hpp"

#include <cmath>
#include <string>

namespace oscfluid {

void RigidParams::validate() const {
  if (!(k_spring > 0.0)) throw ConfigError("rigid: k_spring must be > 0");
  if (!(mass > 0.0)) throw ConfigError("rigid: mass must be > 0");
}

RigidSample rigid_closed_form(double t, const RigidParams& params) {
  params.validate();
  if (params.forcing.kind() == ForcingSignal::Kind::kSampled)
    throw ConfigError("rigid closed form requires sinusoidal or zero forcing");

  const double w0 = std::sqrt(params.k_spring / params.mass);
  const double A = params.forcing.kind() == ForcingSignal::Kind::kZero
                       ? 0.0
                       : params.forcing.amplitude();
  const double w = params.forcing.omega();
  const double ph = params.forcing.phase();

  double bp0 = 0.0, vp0 = 0.0;  // particular solution at t = 0
  double bp = 0.0, vp = 0.0;    // particular solution at t
  if (A != 0.0) {
    const double det = params.k_spring - params.mass * w * w;
    if (det != 0.0) {
      const double amp = A * params.k_spring / det;
      bp0 = amp * std::sin(ph);
      vp0 = amp * w * std::cos(ph);
      bp = amp * std::sin(w * t + ph);
      vp = amp * w * std::cos(w * t + ph);
    } else {
      // Resonant secular solution -(A w0 / 2) t cos(w0 t + phase).
      const double s = A * w0 / 2.0;
      bp0 = 0.0;
      vp0 = -s * std::cos(ph);
      bp = -s * t * std::cos(w0 * t + ph);
      vp = -s * std::cos(w0 * t + ph) + s * w0 * t * std::sin(w0 * t + ph);
    }
  }

  const double c2 = params.b0 - bp0;
  const double c1 = (params.v0 - vp0) / w0;
  RigidSample out;
  out.t = t;
  out.b = c1 * std::sin(w0 * t) + c2 * std::cos(w0 * t) + bp;
  out.bdot = c1 * w0 * std::cos(w0 * t) - c2 * w0 * std::sin(w0 * t) + vp;
  return out;
}

std::vector<RigidSample> rigid_ode(const RigidParams& params, double t_end, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw ConfigError("rigid ode: dt must be > 0");
  const double r = params.k_spring / params.mass;
  auto acc = [&](double t, double b) { return r * (params.forcing.value(t) - b); };

  std::vector<RigidSample> out;
  out.reserve(static_cast<std::size_t>(t_end / dt) + 2);
  double t = 0.0, b = params.b0, v = params.v0;
  out.push_back({t, b, v});
  while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
    const double h = std::min(dt, t_end - t);
    const double k1b = v, k1v = acc(t, b);
    const double k2b = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, b + 0.5 * h * k1b);
    const double k3b = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, b + 0.5 * h * k2b);
    const double k4b = v + h * k3v, k4v = acc(t + h, b + h * k3b);
    b += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
    out.push_back({t, b, v});
  }
  return out;
}

}  // namespace oscfluid
