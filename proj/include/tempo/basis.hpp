#pragma once

#include <Eigen/Core>
#include <vector>

#include "tempo/modulation.hpp"

namespace tempo {

// Unitary coefficient matrix mixing a set of base symbols into superposition
// symbols. Row r holds the coefficients of output symbol r.
struct SuperpositionBasis {
  int d = 0;
  Eigen::MatrixXcd coeffs;
};

// Throws ConfigError unless coeffs * coeffs^H is the identity within 1e-10.
void validate_unitary(const SuperpositionBasis& basis);

// Classical row-wise Gram-Schmidt. Throws ConfigError naming the first row
// that is linearly dependent on its predecessors (residual below 1e-8).
Eigen::MatrixXcd gram_schmidt(const Eigen::MatrixXcd& seed);

// Fixed 4x4 orthonormal basis used by the demonstration runs: a published
// device calibration, orthonormalized to working precision.
SuperpositionBasis demo_basis_4();

struct SuperpositionWaveform {
  ModulationWaveform m;     // peak-normalized mixture of the base waveforms
  double scale = 1.0;       // factor applied so that max |m| = 1
  double power_loss = 0.0;  // fraction of carrier power removed by |m| < 1
};

// Mixes base waveforms with arbitrary coefficients, rescales to unit peak
// (passive devices cannot exceed |m| = 1), and reports the projection power
// loss against the given carrier. No orthogonality is assumed: paired-state
// ensembles use this directly.
SuperpositionWaveform mix_waveforms(const Eigen::VectorXcd& coeffs,
                                    const std::vector<ModulationWaveform>& base,
                                    const Wavepacket& carrier);

// mix_waveforms restricted to a row of a validated unitary basis.
SuperpositionWaveform superposition_waveform(const SuperpositionBasis& basis, int row,
                                             const std::vector<ModulationWaveform>& base,
                                             const Wavepacket& carrier);

struct SuperpositionSymbols {
  SymbolSet set;
  std::vector<double> scales;
  std::vector<double> power_losses;
};

// Builds the full superposition symbol set over base.set's waveforms.
SuperpositionSymbols make_superposition_symbols(const SuperpositionBasis& basis,
                                                const SymbolSet& base);

}  // namespace tempo
