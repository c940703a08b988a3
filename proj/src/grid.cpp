#include "tempo/grid.hpp"

#include <cmath>
#include <sstream>

#include "tempo/errors.hpp"

namespace tempo {

Eigen::ArrayXd TimeGrid::times() const {
  return t_start + Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) * dt;
}

Eigen::ArrayXd FreqGrid::freqs() const {
  return nu_start + Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) * dnu;
}

FreqGrid conjugate_grid(const TimeGrid& grid) {
  FreqGrid f;
  f.n = grid.n;
  f.dnu = 1.0 / (static_cast<double>(grid.n) * grid.dt);
  f.nu_start = -static_cast<double>(grid.n / 2) * f.dnu;
  return f;
}

TimeGrid make_grid(double coherence_time, int oversample, int span_factor,
                   double n_ref, const GridLimits& limits) {
  if (!(coherence_time > 0.0)) throw ConfigError("make_grid: coherence_time must be > 0");
  if (oversample < 1) throw ConfigError("make_grid: oversample must be >= 1");
  if (span_factor < 4) throw ConfigError("make_grid: span_factor must be >= 4");
  if (!(n_ref >= 1.0)) throw ConfigError("make_grid: n_ref must be >= 1");

  const double dt = coherence_time / (static_cast<double>(oversample) * n_ref);
  const double n_min = span_factor * coherence_time * oversample / dt;

  Eigen::Index n = 2;
  while (static_cast<double>(n) < n_min) {
    n *= 2;
    if (n > limits.max_samples) {
      std::ostringstream msg;
      msg << "make_grid: required " << n_min << " samples exceeds cap "
          << limits.max_samples << " (oversample=" << oversample
          << ", span_factor=" << span_factor << ", n_ref=" << n_ref << ")";
      throw ResolutionError(msg.str());
    }
  }

  TimeGrid g;
  g.dt = dt;
  g.n = n;
  g.t_start = (0.5 - static_cast<double>(n / 2)) * dt;
  return g;
}

}  // namespace tempo
