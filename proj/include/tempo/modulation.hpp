#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "tempo/pulse.hpp"
#include "tempo/walsh.hpp"

namespace tempo {

// Drive-electronics low-pass cutoff of the phase modulator. bandwidth is the
// FWHM of the smoothing kernel's power response in Hz; +infinity means an
// ideal (infinitely fast) modulator.
struct EomSpec {
  double bandwidth = std::numeric_limits<double>::infinity();  // [Hz]
};

struct PhaseProfile {
  TimeGrid grid;
  Eigen::ArrayXd phase;  // radians, used only through e^{i phi}
};

// Multiplicative modulation m(t), max|m| <= 1 (passive device, no gain).
struct ModulationWaveform {
  TimeGrid grid;
  Eigen::ArrayXcd samples;
};

// Checks the passive-device bound max|m| <= 1 + 1e-12; throws ConfigError.
void validate_passive(const ModulationWaveform& m);

enum class Scheme { kPfm, kLinearRamp, kSuperposition };
std::string scheme_name(Scheme s);

struct SymbolSet {
  int d = 0;
  std::vector<ModulationWaveform> waveforms;  // one per symbol, shared grid
  Scheme scheme = Scheme::kLinearRamp;
  Wavepacket carrier;
  EomSpec eom;
};

// Segment boundaries splitting the pulse into n equal-intensity intervals.
// boundaries[0] and boundaries[n] sit at the outer grid edges; interior
// boundaries fall on sample edges, so each segment integral matches 1/n to
// within half the largest single-sample intensity.
struct Partition {
  TimeGrid grid;
  std::vector<double> boundaries;  // n+1 monotone times
  int n() const { return static_cast<int>(boundaries.size()) - 1; }
};

Partition equal_intensity_partition(const Wavepacket& w, int n);

// Phase of Walsh row `row` over the partition: pi where W = +1, 0 where W = -1.
PhaseProfile pfm_phase_profile(const WalshMatrix& w, int row, const Partition& part);

// Finite modulator speed: convolves the phase with a unit-area Gaussian kernel
// whose power response has FWHM = eom.bandwidth. Kernel weights are
// bin-integrated (erf differences) and edge-clamped. Effectively sub-sample
// kernels (including bandwidth = inf) return the input unchanged; a finite
// bandwidth whose kernel cannot be represented on the grid (1/bandwidth <
// 2*dt but kernel wider than a sample) throws ResolutionError.
PhaseProfile apply_eom_bandwidth(const PhaseProfile& p, const EomSpec& eom);

ModulationWaveform phase_to_waveform(const PhaseProfile& p);

// Greedy subset of d Walsh rows maximizing the average pairwise sign-change
// count (see walsh.hpp). eom and carrier are accepted for interface stability;
// the selection rule is purely combinatorial.
std::vector<int> select_symbols(const WalshMatrix& w, int d, const EomSpec& eom,
                                const Wavepacket& carrier);

// Average pairwise sign-change count of element-wise row products over a
// selection; the quantity select_symbols maximizes greedily.
double average_pairwise_flips(const WalshMatrix& w, const std::vector<int>& rows);

// m(t) = exp(i 2 pi Delta_k t), Delta_k = k * bandwidth / (d - 1). Symbol 0 is
// unmodulated; symbol d-1 is shifted by the full EOM bandwidth.
ModulationWaveform linear_ramp_waveform(int k, int d, const EomSpec& eom,
                                        const TimeGrid& grid);

// Pointwise product; deliberately NOT renormalized — amplitude modulation
// loses norm, and the lost fraction is the passive-projection loss.
Wavepacket modulate(const Wavepacket& w, const ModulationWaveform& m);

struct PfmSymbols {
  SymbolSet set;
  std::vector<int> rows;        // selected Walsh rows, ascending
  double average_flips = 0.0;   // greedy objective value of the selection
};

PfmSymbols make_pfm_symbols(const Wavepacket& carrier, const EomSpec& eom,
                            int walsh_n, int d);

SymbolSet make_ramp_symbols(const Wavepacket& carrier, const EomSpec& eom, int d);

}  // namespace tempo
