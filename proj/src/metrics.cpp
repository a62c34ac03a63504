#include "oscfluid/metrics.hpp"

#include <cmath>

namespace oscfluid {

std::vector<Peak> find_abs_peaks(const std::vector<double>& t,
                                 const std::vector<double>& series) {
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double a = std::fabs(series[i - 1]);
    const double b = std::fabs(series[i]);
    const double c = std::fabs(series[i + 1]);
    if (b > a && b >= c) peaks.push_back({t[i], b});
  }
  return peaks;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit fit;
  const std::size_t n = x.size();
  if (n < 2) return fit;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

RunMetrics compute_metrics(const Trajectory& traj) {
  RunMetrics m;
  const std::size_t n = traj.rows.size();
  if (n == 0) return m;

  std::vector<double> t(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = traj.rows[i].t;
    b[i] = traj.rows[i].b;
  }
  const std::vector<Peak> peaks = find_abs_peaks(t, b);
  m.n_peaks = static_cast<int>(peaks.size());
  if (peaks.size() >= 2) {
    std::vector<double> pt, pv, lv;
    for (const Peak& p : peaks) {
      if (p.value <= 0.0) continue;
      pt.push_back(p.t);
      pv.push_back(p.value);
      lv.push_back(std::log(p.value));
    }
    if (pt.size() >= 2) {
      const LineFit logfit = fit_line(pt, lv);
      m.decay_rate = -logfit.slope;
      m.decay_fit_r2 = logfit.r2;
      const LineFit linfit = fit_line(pt, pv);
      m.envelope_slope = linfit.slope;
      m.envelope_fit_r2 = linfit.r2;
    }
  }

  const double mass0 = traj.rows.front().ledger.mass;
  for (std::size_t i = 1; i < n; ++i) {
    m.mass_drift = std::max(m.mass_drift,
                            std::fabs(traj.rows[i].ledger.mass - mass0) / std::fabs(mass0));
    const double dt = t[i] - t[i - 1];
    m.total_dissipation +=
        dt * (traj.rows[i].ledger.dissipation_visc + traj.rows[i].ledger.dissipation_eps);
  }
  return m;
}

}  // namespace oscfluid
