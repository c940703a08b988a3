#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace tempo {

// Uniform time grid. Samples sit at midpoints symmetric about t = 0:
//   t_i = (i - n/2 + 1/2) * dt,  i = 0..n-1,
// so a symmetric pulse has no sample exactly at its center and the two halves
// carry identical weight in midpoint Riemann sums.
struct TimeGrid {
  double t_start = 0.0;  // time of sample 0 [s]
  double dt = 0.0;       // sample spacing [s]
  Eigen::Index n = 0;    // number of samples

  double time(Eigen::Index i) const { return t_start + static_cast<double>(i) * dt; }
  double span() const { return static_cast<double>(n) * dt; }
  Eigen::ArrayXd times() const;

  bool operator==(const TimeGrid& other) const = default;
};

// Frequency grid conjugate to a TimeGrid, fftshift-ordered:
//   nu_k = (k - n/2) * dnu,  dnu = 1/(n*dt)  [Hz, ordinary frequency].
struct FreqGrid {
  double nu_start = 0.0;  // frequency of bin 0 [Hz]
  double dnu = 0.0;       // bin spacing [Hz]
  Eigen::Index n = 0;

  double freq(Eigen::Index k) const { return nu_start + static_cast<double>(k) * dnu; }
  Eigen::ArrayXd freqs() const;

  bool operator==(const FreqGrid& other) const = default;
};

FreqGrid conjugate_grid(const TimeGrid& grid);

struct GridLimits {
  Eigen::Index max_samples = Eigen::Index{1} << 22;
};

// Builds the simulation grid for a pulse of the given coherence time.
//   dt = coherence_time / (oversample * n_ref)
//   n  = smallest power of two >= span_factor * coherence_time * oversample / dt,
// capped at limits.max_samples (throws ResolutionError beyond the cap).
// n_ref is the largest EOM-to-photon bandwidth ratio the experiment will use,
// so that the fastest modulation feature stays oversampled.
TimeGrid make_grid(double coherence_time, int oversample, int span_factor,
                   double n_ref = 100.0, const GridLimits& limits = {});

}  // namespace tempo
