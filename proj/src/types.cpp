#include "oscfluid/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oscfluid {

void FluidParams::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(mu > 0.0)) fail("mu must be > 0 (got " + std::to_string(mu) + ")");
  if (!(lambda + (2.0 / 3.0) * mu > 0.0))
    fail("lambda + (2/3) mu must be > 0 (got " + std::to_string(lambda + 2.0 / 3.0 * mu) + ")");
  if (!(a >= 0.0)) fail("a must be >= 0 (got " + std::to_string(a) + ")");
  if (!(gamma > 1.0)) fail("gamma must be > 1 (got " + std::to_string(gamma) + ")");
  if (!(k_spring > 0.0)) fail("k_spring must be > 0 (got " + std::to_string(k_spring) + ")");
  if (!(epsilon >= 0.0)) fail("epsilon must be >= 0 (got " + std::to_string(epsilon) + ")");
  if (!(delta >= 0.0)) fail("delta must be >= 0 (got " + std::to_string(delta) + ")");
  if (!(L > 0.0)) fail("L must be > 0 (got " + std::to_string(L) + ")");
  if (n_modes < 1) fail("n_modes must be >= 1 (got " + std::to_string(n_modes) + ")");
  if (n_cells < 2) fail("n_cells must be >= 2 (got " + std::to_string(n_cells) + ")");
  if (!(dt > 0.0)) fail("dt must be > 0 (got " + std::to_string(dt) + ")");
  if (!(fp_tol > 0.0)) fail("fp_tol must be > 0 (got " + std::to_string(fp_tol) + ")");
  if (fp_max_iter < 1) fail("fp_max_iter must be >= 1 (got " + std::to_string(fp_max_iter) + ")");
}

ForcingSignal ForcingSignal::sinusoid(double amplitude, double omega, double phase) {
  ForcingSignal f;
  f.kind_ = Kind::kSinusoid;
  f.amplitude_ = amplitude;
  f.omega_ = omega;
  f.phase_ = phase;
  return f;
}

ForcingSignal ForcingSignal::sampled(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw ConfigError("sampled forcing needs matching times/values with at least 2 samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ConfigError("sampled forcing times must be strictly increasing");
  ForcingSignal f;
  f.kind_ = Kind::kSampled;
  f.times_ = std::move(times);
  f.values_ = std::move(values);
  // C^1 Hermite slopes from centered differences, one-sided at the ends.
  const std::size_t n = f.times_.size();
  f.slopes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      f.slopes_[i] = (f.values_[1] - f.values_[0]) / (f.times_[1] - f.times_[0]);
    } else if (i == n - 1) {
      f.slopes_[i] = (f.values_[n - 1] - f.values_[n - 2]) / (f.times_[n - 1] - f.times_[n - 2]);
    } else {
      f.slopes_[i] = (f.values_[i + 1] - f.values_[i - 1]) / (f.times_[i + 1] - f.times_[i - 1]);
    }
  }
  return f;
}

int ForcingSignal::locate(double t) const {
  if (t < times_.front() || t > times_.back())
    throw ConfigError("forcing evaluated at t=" + std::to_string(t) +
                      " outside sampled range [" + std::to_string(times_.front()) + ", " +
                      std::to_string(times_.back()) + "]");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  int i = static_cast<int>(it - times_.begin()) - 1;
  if (i >= static_cast<int>(times_.size()) - 1) i = static_cast<int>(times_.size()) - 2;
  if (i < 0) i = 0;
  return i;
}

double ForcingSignal::value(double t) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kSinusoid:
      return amplitude_ * std::sin(omega_ * t + phase_);
    case Kind::kSampled: {
      const int i = locate(t);
      const double h = times_[i + 1] - times_[i];
      const double s = (t - times_[i]) / h;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
      const double h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s);
      const double h11 = s * s * (s - 1);
      return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] +
             h11 * h * slopes_[i + 1];
    }
  }
  return 0.0;
}

double ForcingSignal::derivative(double t) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kSinusoid:
      return amplitude_ * omega_ * std::cos(omega_ * t + phase_);
    case Kind::kSampled: {
      const int i = locate(t);
      const double h = times_[i + 1] - times_[i];
      const double s = (t - times_[i]) / h;
      const double d00 = 6 * s * (s - 1) / h;
      const double d10 = (1 - s) * (1 - 3 * s);
      const double d01 = -6 * s * (s - 1) / h;
      const double d11 = s * (3 * s - 2);
      return d00 * values_[i] + d10 * slopes_[i] + d01 * values_[i + 1] + d11 * slopes_[i + 1];
    }
  }
  return 0.0;
}

std::string ForcingSignal::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kZero:
      os << "zero";
      break;
    case Kind::kSinusoid:
      os << "sinusoid(amplitude=" << amplitude_ << ", omega=" << omega_ << ", phase=" << phase_
         << ")";
      break;
    case Kind::kSampled:
      os << "sampled(" << times_.size() << " points on [" << times_.front() << ", "
         << times_.back() << "])";
      break;
  }
  return os.str();
}

double FluidState::min_rho() const {
  return *std::min_element(rho.begin(), rho.end());
}

double FluidState::max_rho() const {
  return *std::max_element(rho.begin(), rho.end());
}

}  // namespace oscfluid
