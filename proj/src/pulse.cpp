#include "tempo/pulse.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// Amplitude profile with intensity median at t = 0 and peak amplitude 1.
double raw_amplitude(const PulseShape& shape, double t) {
  const double tau = shape.coherence_time;
  switch (shape.kind) {
    case PulseKind::kGaussian: {
      // |f|^2 = exp(-t^2 / (2 sigma^2)) with intensity FWHM = tau.
      const double sigma = tau / (2.0 * std::sqrt(2.0 * kLn2));
      return std::exp(-t * t / (4.0 * sigma * sigma));
    }
    case PulseKind::kTwoSidedExponential: {
      // |f|^2 = exp(-|t| / tau0), intensity FWHM = 2 tau0 ln2 = tau.
      const double tau0 = tau / (2.0 * kLn2);
      return std::exp(-std::abs(t) / (2.0 * tau0));
    }
    case PulseKind::kOneSidedExponential: {
      // |f|^2 = exp(-(t - onset) / tau0) for t >= onset; intensity halves at
      // tau after onset (tau0 = tau / ln2); median (half the energy) at
      // onset + tau0 ln2 = onset + tau, so onset = -tau.
      const double tau0 = tau / kLn2;
      const double x = t + tau;
      return x >= 0.0 ? std::exp(-x / (2.0 * tau0)) : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

PulseKind pulse_kind_from_name(const std::string& name) {
  if (name == "gaussian") return PulseKind::kGaussian;
  if (name == "one_sided_exponential") return PulseKind::kOneSidedExponential;
  if (name == "two_sided_exponential") return PulseKind::kTwoSidedExponential;
  throw ConfigError("unknown pulse shape '" + name +
                    "' (expected gaussian, one_sided_exponential, two_sided_exponential)");
}

std::string pulse_kind_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::kGaussian: return "gaussian";
    case PulseKind::kOneSidedExponential: return "one_sided_exponential";
    case PulseKind::kTwoSidedExponential: return "two_sided_exponential";
  }
  return "?";
}

double analytic_linewidth(const PulseShape& shape) {
  const double tau = shape.coherence_time;
  switch (shape.kind) {
    case PulseKind::kGaussian:
      return 2.0 * kLn2 / (kPi * tau);
    case PulseKind::kTwoSidedExponential:
      // |f~|^2 is a squared Lorentzian; half max at (4 pi nu tau0)^2 = sqrt(2)-1.
      return std::sqrt(std::numbers::sqrt2 - 1.0) * kLn2 / (kPi * tau);
    case PulseKind::kOneSidedExponential:
      // |f~|^2 Lorentzian with FWHM 1/(2 pi tau0), tau0 = tau/ln2.
      return kLn2 / (2.0 * kPi * tau);
  }
  return 0.0;
}

double Wavepacket::norm_squared() const { return samples.abs2().sum() * grid.dt; }

Wavepacket synth_wavepacket(const PulseShape& shape, const TimeGrid& grid) {
  if (!(shape.coherence_time > 0.0)) throw ConfigError("synth_wavepacket: coherence_time must be > 0");
  if (grid.n < 2 || !(grid.dt > 0.0)) throw ConfigError("synth_wavepacket: empty grid");
  if (grid.span() < 4.0 * shape.coherence_time)
    throw ConfigError("synth_wavepacket: grid spans fewer than 4 coherence times");
  if (grid.dt > shape.coherence_time / 8.0)
    throw ConfigError("synth_wavepacket: fewer than 8 samples per coherence time");

  Wavepacket w;
  w.grid = grid;
  w.samples.resize(grid.n);
  double peak = 0.0;
  for (Eigen::Index i = 0; i < grid.n; ++i) {
    const double a = raw_amplitude(shape, grid.time(i));
    w.samples[i] = a;
    peak = std::max(peak, a);
  }

  const double edge = std::max(std::abs(w.samples[0]), std::abs(w.samples[grid.n - 1]));
  if (edge > 1e-6 * peak) {
    std::ostringstream msg;
    msg << "synth_wavepacket: envelope truncated at grid edge (" << edge / peak
        << " of peak); widen span_factor";
    throw ResolutionError(msg.str());
  }

  // Truncated tail mass relative to total, from the analytic tail integrals.
  const double n2 = w.norm_squared();
  double tail = 0.0;
  const double tau = shape.coherence_time;
  const double t_lo = grid.t_start - 0.5 * grid.dt;
  const double t_hi = grid.time(grid.n - 1) + 0.5 * grid.dt;
  switch (shape.kind) {
    case PulseKind::kGaussian: {
      const double sigma = tau / (2.0 * std::sqrt(2.0 * kLn2));
      tail = 0.5 * std::erfc(t_hi / (std::numbers::sqrt2 * sigma)) +
             0.5 * std::erfc(-t_lo / (std::numbers::sqrt2 * sigma));
      break;
    }
    case PulseKind::kTwoSidedExponential: {
      const double tau0 = tau / (2.0 * kLn2);
      tail = 0.5 * (std::exp(-std::abs(t_hi) / tau0) + std::exp(-std::abs(t_lo) / tau0));
      break;
    }
    case PulseKind::kOneSidedExponential: {
      const double tau0 = tau / kLn2;
      tail = std::exp(-(t_hi + tau) / tau0);
      break;
    }
  }
  if (tail > 1e-6)
    throw ResolutionError("synth_wavepacket: truncated envelope mass exceeds 1e-6 of norm");

  w.samples /= std::sqrt(n2);
  return w;
}

std::complex<double> inner_product(const Wavepacket& a, const Wavepacket& b) {
  if (!(a.grid == b.grid)) throw ConfigError("inner_product: mismatched grids");
  return (a.samples.conjugate() * b.samples).sum() * a.grid.dt;
}

double measure_fwhm(const Eigen::ArrayXd& values, double axis_step) {
  const Eigen::Index n = values.size();
  if (n < 3) throw ConfigError("measure_fwhm: need at least 3 samples");
  if (!(axis_step > 0.0)) throw ConfigError("measure_fwhm: axis_step must be > 0");

  Eigen::Index peak_idx = 0;
  const double peak = values.maxCoeff(&peak_idx);
  const double floor = values.minCoeff();
  if (!(peak > 0.0) || peak - floor <= 1e-12 * std::abs(peak))
    throw ConfigError("measure_fwhm: flat input");

  const double half = 0.5 * peak;

  // The region at or above half max must be a single contiguous run.
  Eigen::Index runs = 0;
  bool in_run = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool above = values[i] >= half;
    if (above && !in_run) ++runs;
    in_run = above;
  }
  if (runs != 1) throw ConfigError("measure_fwhm: multi-peaked input");

  auto interp = [&](Eigen::Index lo, Eigen::Index hi) {
    // crossing between samples lo (below half) and hi (above half) or reverse
    const double v0 = values[lo], v1 = values[hi];
    const double frac = (half - v0) / (v1 - v0);
    return (static_cast<double>(lo) + frac * static_cast<double>(hi - lo)) * axis_step;
  };

  double left = 0.0;
  if (values[0] >= half) {
    left = 0.0;  // rises at the array edge
  } else {
    Eigen::Index i = peak_idx;
    while (values[i - 1] >= half) --i;
    left = interp(i - 1, i);
  }
  double right = static_cast<double>(n - 1) * axis_step;
  if (values[n - 1] < half) {
    Eigen::Index i = peak_idx;
    while (values[i + 1] >= half) ++i;
    right = interp(i + 1, i);
  }
  return right - left;
}

}  // namespace tempo
