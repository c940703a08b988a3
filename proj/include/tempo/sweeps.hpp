#pragma once

#include <vector>

#include "tempo/basis.hpp"
#include "tempo/detection.hpp"
#include "tempo/metrics.hpp"

namespace tempo {

// Physical context shared by every point of a sweep: one synthesized carrier
// and its analytic linewidth. All modulator and filter bandwidths inside the
// sweeps are expressed as ratios to photon_linewidth.
struct SweepContext {
  PulseShape pulse;
  int oversample = 8;
  double span_factor = 8.0;
  Wavepacket carrier;
  double photon_linewidth = 0.0;  // [Hz], FWHM of the carrier power spectrum
};

SweepContext make_sweep_context(const PulseShape& pulse, int oversample, double span_factor);

struct ErsSweepSpec {
  std::vector<int> walsh_n;          // phase-flip scheme only
  std::vector<double> speed_ratios;  // modulator-to-photon bandwidth ratios
  std::vector<int> dims;
  FilterShape filter_shape = FilterShape::kGaussian;
  double filter_ratio = 1.0;  // filter FWHM / photon linewidth
  int jobs = 1;
};

struct ErsSweepRow {
  int walsh_n = 0;  // 0 on linear-ramp rows
  int d = 0;
  double speed_ratio = 0.0;
  double normalized_dim = 0.0;  // (d - 1) / speed_ratio
  double ers = 0.0;
  double mean_efficiency = 0.0;
};

// One ERS evaluation per grid point, in configuration order. The phase-flip
// scheme evaluates each (n, ratio) pair once at the largest requested d and
// reads smaller dimensions off submatrices (the greedy row selection is
// nested), so results are identical to independent per-d evaluations.
std::vector<ErsSweepRow> ers_vs_dimension_sweep(Scheme scheme, const SweepContext& ctx,
                                                const ErsSweepSpec& spec);

struct MiSweepSpec {
  int d = 16;
  double speed_ratio = 100.0;
  std::vector<double> amplitudes = {0.0};  // superposition amplitude a in [0, 1]
  double phase = 0.0;                      // relative phase of the paired state
  int pairing_offset = 1;                  // partner index j = (k + offset) mod d
  FilterShape filter_shape = FilterShape::kGaussian;
  std::vector<double> filter_ratios;
  int jobs = 1;
};

struct MiSweepPoint {
  double filter_ratio = 0.0;
  double amplitude = 0.0;
  MiResult mi;
  bool is_peak = false;  // argmax of bits_per_symbol within this amplitude's curve
};

// Mutual information of the matched-demodulation channel versus filter
// bandwidth, for each superposition amplitude. Symbols are pairwise mixtures
// sqrt(1-a^2)|k> + a e^{i phase}|k+offset> over the linear-ramp base.
std::vector<MiSweepPoint> filter_bandwidth_sweep(const SweepContext& ctx,
                                                 const MiSweepSpec& spec);

struct LossSweepSpec {
  std::vector<int> dims;
  double speed_ratio = 100.0;
  FilterShape filter_shape = FilterShape::kGaussian;
  double filter_ratio = 1.0;
  std::vector<double> losses;
  double dark_rate = 0.0;    // [1/s]
  double gate_window = 0.0;  // [s]
  int jobs = 1;
};

struct LossSweepRow {
  double loss = 0.0;
  int d = 0;
  double ers = 0.0;
};

// ERS of the loss/dark-count-degraded linear-ramp channel, one curve per d.
std::vector<LossSweepRow> loss_sweep(const SweepContext& ctx, const LossSweepSpec& spec);

}  // namespace tempo
