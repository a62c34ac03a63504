#ifndef OSCFLUID_METRICS_HPP_
#define OSCFLUID_METRICS_HPP_

#include <vector>

#include "oscfluid/integrator.hpp"

namespace oscfluid {

struct Peak {
  double t = 0.0;
  double value = 0.0;
};

/// Strict local maxima of |series| (interior points only).
std::vector<Peak> find_abs_peaks(const std::vector<double>& t,
                                 const std::vector<double>& series);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct RunMetrics {
  double decay_rate = 0.0;      // -slope of ln|b| peaks vs t
  double decay_fit_r2 = 0.0;
  double envelope_slope = 0.0;  // slope of |b| peaks vs t
  double envelope_fit_r2 = 0.0;
  double total_dissipation = 0.0;
  double mass_drift = 0.0;
  int n_peaks = 0;
};

RunMetrics compute_metrics(const Trajectory& traj);

}  // namespace oscfluid

#endif  // OSCFLUID_METRICS_HPP_
