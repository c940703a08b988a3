#pragma once

#include <Eigen/Core>
#include <vector>

#include "tempo/filter.hpp"
#include "tempo/modulation.hpp"

namespace tempo {

// Mean detection probabilities: entry (k, j) is the click probability when
// symbol k is sent and the loop demodulates with the waveform of symbol j.
struct DetectionMatrix {
  int d = 0;
  Eigen::MatrixXd p;
};

// Throws ConfigError if any entry falls outside [0, 1] beyond 1e-9 slack.
void validate_probabilities(const DetectionMatrix& m);

// Click probability for one sent/analysis pair: the demodulated intensity
// waveform conj(analysis) * sent * |carrier|^2 is pushed through the spectral
// filter and its transmitted power is normalized by the matched wide-filter
// value (the integral of |carrier|^4).
double projection_probability(const Wavepacket& carrier, const ModulationWaveform& sent,
                              const ModulationWaveform& analysis, const FilterSpec& filter);

// Full d x d matrix over a symbol set; jobs > 1 parallelizes over entries
// with a deterministic result.
DetectionMatrix detection_matrix(const SymbolSet& symbols, const FilterSpec& filter,
                                 int jobs = 1);

// Ideal projection matrix |<psi_j | psi_k>|^2 of the normalized modulated
// states; the narrowband limit of detection_matrix up to a global scale.
Eigen::MatrixXd ideal_projection_matrix(const SymbolSet& symbols);

struct NarrowbandReport {
  Eigen::MatrixXd ideal;
  std::vector<double> bandwidths;  // as given, one per probe filter
  std::vector<double> scale_fit;   // least-squares c in p ~ c * ideal
  std::vector<double> residual;    // ||p - c*ideal||_F / ||p||_F
};

// Probes convergence of the detection matrix to the ideal projections as the
// filter narrows; callers check that residuals shrink with the bandwidths.
NarrowbandReport narrowband_limit_check(const SymbolSet& symbols,
                                        const std::vector<FilterSpec>& filters,
                                        int jobs = 1);

}  // namespace tempo
