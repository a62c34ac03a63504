#ifndef OSCFLUID_RIGID_HPP_
#define OSCFLUID_RIGID_HPP_

#include <vector>

#include "oscfluid/types.hpp"

namespace oscfluid {

/// Undamped oscillator b'' + (k/M) b = (k/M) f(t) for a rigid body of total
/// mass M on the spring; the reference and oracle for the damping-contrast
/// studies.
struct RigidParams {
  double k_spring = 1.0;  // > 0
  double mass = 1.0;      // > 0
  ForcingSignal forcing;  // closed form requires a pure sinusoid or zero
  double b0 = 0.0;
  double v0 = 0.0;

  void validate() const;
};

struct RigidSample {
  double t = 0.0;
  double b = 0.0;
  double bdot = 0.0;
};

/// Closed-form solution for sinusoidal forcing A sin(w t + phase).
/// Off resonance the particular amplitude is A k / (k - M w^2); at
/// w^2 = k/M the secular term -(A w / 2) t cos(w t + phase) appears.
/// The homogeneous constants are fitted to (b0, v0).
RigidSample rigid_closed_form(double t, const RigidParams& params);

/// Classical 4th-order one-step integration of the same ODE.
std::vector<RigidSample> rigid_ode(const RigidParams& params, double t_end, double dt);

}  // namespace oscfluid

#endif  // OSCFLUID_RIGID_HPP_
