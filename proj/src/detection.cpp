#include "tempo/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempo/errors.hpp"
#include "tempo/parallel.hpp"

namespace tempo {

namespace {

// Shared per-carrier state for a batch of projection evaluations.
struct DemodContext {
  TimeGrid grid;
  FreqGrid fgrid;
  Eigen::ArrayXcd rho;  // |carrier|^2, complex-typed for cheap products
  double denom = 0.0;   // integral of |carrier|^4: matched wide-filter power
  Eigen::ArrayXcd filt;
};

DemodContext make_context(const Wavepacket& carrier, const FilterSpec& filter) {
  if (carrier.grid.n == 0) throw ConfigError("carrier has no samples");
  DemodContext c;
  c.grid = carrier.grid;
  c.fgrid = conjugate_grid(carrier.grid);
  const Eigen::ArrayXd rho = carrier.intensity();
  c.rho = rho.cast<std::complex<double>>();
  c.denom = (rho * rho).sum() * c.grid.dt;
  if (!(c.denom > 0.0)) throw ConfigError("carrier has zero power");
  c.filt = filter_amplitude_response(filter, c.fgrid);
  return c;
}

double context_entry(const DemodContext& c, const ModulationWaveform& sent,
                     const ModulationWaveform& analysis) {
  if (!(sent.grid == c.grid) || !(analysis.grid == c.grid)) {
    throw ConfigError("modulation grids do not match the carrier grid");
  }
  Wavepacket u;
  u.grid = c.grid;
  u.samples = analysis.samples.conjugate() * sent.samples * c.rho;
  const Spectrum s = to_spectrum(u);
  const double transmitted = (s.samples * c.filt).abs2().sum() * c.fgrid.dnu;
  return transmitted / c.denom;
}

void check_symbols(const SymbolSet& symbols) {
  if (symbols.d < 1 || symbols.waveforms.size() != static_cast<std::size_t>(symbols.d)) {
    throw ConfigError("symbol set has " + std::to_string(symbols.waveforms.size()) +
                      " waveforms for d = " + std::to_string(symbols.d));
  }
  for (const auto& w : symbols.waveforms) {
    if (!(w.grid == symbols.carrier.grid)) {
      throw ConfigError("symbol waveform grid does not match the carrier grid");
    }
  }
}

}  // namespace

void validate_probabilities(const DetectionMatrix& m) {
  if (m.d < 1 || m.p.rows() != m.d || m.p.cols() != m.d) {
    throw ConfigError("detection matrix must be square d x d");
  }
  const double lo = m.p.minCoeff();
  const double hi = m.p.maxCoeff();
  if (lo < -1e-9 || hi > 1.0 + 1e-9) {
    throw ConfigError("detection probabilities out of [0, 1]: range [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
}

double projection_probability(const Wavepacket& carrier, const ModulationWaveform& sent,
                              const ModulationWaveform& analysis, const FilterSpec& filter) {
  const DemodContext c = make_context(carrier, filter);
  return context_entry(c, sent, analysis);
}

DetectionMatrix detection_matrix(const SymbolSet& symbols, const FilterSpec& filter, int jobs) {
  check_symbols(symbols);
  const DemodContext c = make_context(symbols.carrier, filter);
  DetectionMatrix m;
  m.d = symbols.d;
  m.p.resize(m.d, m.d);
  const auto d = static_cast<std::size_t>(symbols.d);
  parallel_for_index(d * d, jobs, [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i / d);  // sent
    const auto j = static_cast<Eigen::Index>(i % d);  // analysis
    m.p(k, j) = context_entry(c, symbols.waveforms[i / d], symbols.waveforms[i % d]);
  });
  validate_probabilities(m);
  m.p = m.p.cwiseMax(0.0).cwiseMin(1.0);
  return m;
}

Eigen::MatrixXd ideal_projection_matrix(const SymbolSet& symbols) {
  check_symbols(symbols);
  const auto d = static_cast<std::size_t>(symbols.d);
  std::vector<Wavepacket> states;
  states.reserve(d);
  for (const auto& w : symbols.waveforms) states.push_back(modulate(symbols.carrier, w));
  Eigen::MatrixXd ideal(symbols.d, symbols.d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      const double overlap = std::norm(inner_product(states[j], states[k]));
      ideal(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          overlap / (states[j].norm_squared() * states[k].norm_squared());
    }
  }
  return ideal;
}

NarrowbandReport narrowband_limit_check(const SymbolSet& symbols,
                                        const std::vector<FilterSpec>& filters, int jobs) {
  if (filters.empty()) throw ConfigError("narrowband check needs at least one filter");
  NarrowbandReport report;
  report.ideal = ideal_projection_matrix(symbols);
  const double ideal_sq = report.ideal.squaredNorm();
  for (const auto& f : filters) {
    const DetectionMatrix m = detection_matrix(symbols, f, jobs);
    const double c = m.p.cwiseProduct(report.ideal).sum() / ideal_sq;
    report.bandwidths.push_back(f.bandwidth);
    report.scale_fit.push_back(c);
    report.residual.push_back((m.p - c * report.ideal).norm() / m.p.norm());
  }
  return report;
}

}  // namespace tempo
