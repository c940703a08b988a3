#include "tempo/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tempo/errors.hpp"

namespace tempo {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate_passive(const ModulationWaveform& m) {
  const double peak = m.samples.abs().maxCoeff();
  if (!(peak <= 1.0 + 1e-12)) {
    throw ConfigError("modulation waveform exceeds unit amplitude (max |m| = " +
                      std::to_string(peak) + "); passive devices cannot amplify");
  }
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kPfm: return "pfm";
    case Scheme::kLinearRamp: return "linear_ramp";
    case Scheme::kSuperposition: return "superposition";
  }
  throw ConfigError("unknown scheme");
}

Partition equal_intensity_partition(const Wavepacket& w, int n) {
  if (n < 1) throw ConfigError("partition count must be >= 1, got " + std::to_string(n));
  if (static_cast<Eigen::Index>(n) > w.grid.n) {
    throw ConfigError("partition count " + std::to_string(n) + " exceeds sample count " +
                      std::to_string(w.grid.n));
  }
  const Eigen::ArrayXd intensity = w.intensity();
  const double total = intensity.sum() * w.grid.dt;
  if (!(total > 0.0)) throw ConfigError("cannot partition a zero-intensity pulse");

  Partition part;
  part.grid = w.grid;
  part.boundaries.resize(static_cast<std::size_t>(n) + 1);
  part.boundaries[0] = w.grid.t_start - 0.5 * w.grid.dt;
  part.boundaries[static_cast<std::size_t>(n)] = w.grid.time(w.grid.n - 1) + 0.5 * w.grid.dt;

  // Interior boundaries snap to the nearest sample edge; the cumulative sum is
  // monotone, so a single forward walk places all of them.
  const Eigen::Index ns = w.grid.n;
  double cum = 0.0;
  Eigen::Index i = 0;
  for (int j = 1; j < n; ++j) {
    const double target = total * static_cast<double>(j) / n;
    while (i < ns && cum + intensity[i] * w.grid.dt < target) {
      cum += intensity[i] * w.grid.dt;
      ++i;
    }
    // cum (edge after sample i-1) is the last value below target; the edge
    // after sample i overshoots. Pick whichever edge is closer.
    const double after = cum + (i < ns ? intensity[i] * w.grid.dt : 0.0);
    Eigen::Index edge = (target - cum <= after - target) ? i : i + 1;
    edge = std::min(edge, ns - 1);
    part.boundaries[j] = w.grid.t_start + (static_cast<double>(edge) - 0.5) * w.grid.dt;
    if (part.boundaries[j] <= part.boundaries[j - 1]) {
      throw ResolutionError("equal-intensity boundaries collide; grid too coarse for " +
                            std::to_string(n) + " segments");
    }
  }
  return part;
}

PhaseProfile pfm_phase_profile(const WalshMatrix& w, int row, const Partition& part) {
  if (row < 0 || row >= w.rows()) {
    throw ConfigError("row index " + std::to_string(row) + " out of range for order " +
                      std::to_string(w.rows()));
  }
  if (w.cols() != part.n()) {
    throw ConfigError("partition has " + std::to_string(part.n()) +
                      " segments but the matrix order is " + std::to_string(w.cols()));
  }
  PhaseProfile p;
  p.grid = part.grid;
  p.phase.resize(static_cast<Eigen::Index>(p.grid.n));
  int seg = 0;
  for (Eigen::Index idx = 0; idx < p.grid.n; ++idx) {
    const double t = p.grid.time(idx);
    while (seg + 1 < part.n() && t >= part.boundaries[seg + 1]) ++seg;
    p.phase[idx] = 0.5 * kPi * (w(row, seg) + 1);
  }
  return p;
}

PhaseProfile apply_eom_bandwidth(const PhaseProfile& p, const EomSpec& eom) {
  const double b = eom.bandwidth;
  if (std::isnan(b) || b <= 0.0) {
    throw ConfigError("modulator bandwidth must be positive");
  }
  if (std::isinf(b)) return p;  // ideal modulator: no smoothing

  const double dt = p.grid.dt;
  if (1.0 / b < 2.0 * dt) {
    throw ResolutionError("modulator bandwidth too high for the grid: 1/bandwidth = " +
                          std::to_string(1.0 / b) + " s is below two samples");
  }
  // Gaussian kernel whose power response has FWHM = bandwidth.
  const double s = std::sqrt(std::numbers::ln2) / (kPi * b);
  const auto n = static_cast<Eigen::Index>(p.grid.n);
  const auto radius = static_cast<Eigen::Index>(std::ceil(6.0 * s / dt));
  if (2 * radius + 1 > n) {
    throw ResolutionError("modulator kernel wider than the simulation window");
  }

  // Sampled-Gaussian weights. Sampling (rather than bin-integrating) keeps
  // the discrete kernel an exact semigroup: two passes at bandwidth B match
  // one pass at B/sqrt(2) to machine precision, where cell-averaged weights
  // would drift by O((dt/s)^2).
  Eigen::ArrayXd weights(2 * radius + 1);
  for (Eigen::Index r = -radius; r <= radius; ++r) {
    const double x = static_cast<double>(r) * dt / s;
    weights[r + radius] = std::exp(-0.5 * x * x);
  }
  weights /= weights.sum();

  PhaseProfile out;
  out.grid = p.grid;
  out.phase.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index r = -radius; r <= radius; ++r) {
      const Eigen::Index j = std::clamp<Eigen::Index>(i + r, 0, n - 1);
      acc += weights[r + radius] * p.phase[j];
    }
    out.phase[i] = acc;
  }
  return out;
}

ModulationWaveform phase_to_waveform(const PhaseProfile& p) {
  ModulationWaveform m;
  m.grid = p.grid;
  m.samples = (std::complex<double>(0.0, 1.0) * p.phase.cast<std::complex<double>>()).exp();
  return m;
}

double average_pairwise_flips(const WalshMatrix& w, const std::vector<int>& rows) {
  if (rows.size() < 2) return 0.0;
  long total = 0;
  long pairs = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const Eigen::VectorXi prod =
          w.row(rows[a]).cwiseProduct(w.row(rows[b])).transpose();
      total += sign_changes(prod);
      ++pairs;
    }
  }
  return static_cast<double>(total) / static_cast<double>(pairs);
}

std::vector<int> select_symbols(const WalshMatrix& w, int d, const EomSpec& eom,
                                const Wavepacket& carrier) {
  (void)eom;      // reserved: the greedy rule is purely combinatorial, but the
  (void)carrier;  // interface carries the physical context for future rules
  return greedy_max_flip_rows(w, d);
}

ModulationWaveform linear_ramp_waveform(int k, int d, const EomSpec& eom,
                                        const TimeGrid& grid) {
  if (d < 2) throw ConfigError("linear ramp needs d >= 2, got " + std::to_string(d));
  if (k < 0 || k >= d) {
    throw ConfigError("ramp symbol index " + std::to_string(k) + " out of range for d = " +
                      std::to_string(d));
  }
  if (!std::isfinite(eom.bandwidth) || eom.bandwidth <= 0.0) {
    throw ConfigError("linear ramp requires a finite positive modulator bandwidth");
  }
  const double shift = static_cast<double>(k) * eom.bandwidth / (d - 1);
  ModulationWaveform m;
  m.grid = grid;
  m.samples.resize(grid.n);
  for (Eigen::Index i = 0; i < grid.n; ++i) {
    const double arg = 2.0 * kPi * shift * grid.time(i);
    m.samples[i] = std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return m;
}

Wavepacket modulate(const Wavepacket& w, const ModulationWaveform& m) {
  if (!(w.grid == m.grid)) throw ConfigError("modulation grid does not match the pulse grid");
  Wavepacket out;
  out.grid = w.grid;
  out.samples = w.samples * m.samples;  // norm intentionally not restored
  return out;
}

PfmSymbols make_pfm_symbols(const Wavepacket& carrier, const EomSpec& eom,
                            int walsh_n, int d) {
  if (d < 2) throw ConfigError("need at least two symbols, got d = " + std::to_string(d));
  const WalshMatrix w = walsh_matrix(walsh_n);
  PfmSymbols out;
  out.rows = select_symbols(w, d, eom, carrier);
  out.average_flips = average_pairwise_flips(w, out.rows);
  const Partition part = equal_intensity_partition(carrier, walsh_n);
  out.set.d = d;
  out.set.scheme = Scheme::kPfm;
  out.set.carrier = carrier;
  out.set.eom = eom;
  out.set.waveforms.reserve(static_cast<std::size_t>(d));
  for (int row : out.rows) {
    PhaseProfile p = apply_eom_bandwidth(pfm_phase_profile(w, row, part), eom);
    ModulationWaveform m = phase_to_waveform(p);
    validate_passive(m);
    out.set.waveforms.push_back(std::move(m));
  }
  return out;
}

SymbolSet make_ramp_symbols(const Wavepacket& carrier, const EomSpec& eom, int d) {
  if (d < 2) throw ConfigError("need at least two symbols, got d = " + std::to_string(d));
  SymbolSet set;
  set.d = d;
  set.scheme = Scheme::kLinearRamp;
  set.carrier = carrier;
  set.eom = eom;
  set.waveforms.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    ModulationWaveform m = linear_ramp_waveform(k, d, eom, carrier.grid);
    validate_passive(m);
    set.waveforms.push_back(std::move(m));
  }
  return set;
}

}  // namespace tempo
