#include "tempo/basis.hpp"

#include <algorithm>
#include <string>

#include "tempo/errors.hpp"

namespace tempo {

void validate_unitary(const SuperpositionBasis& basis) {
  if (basis.d < 1 || basis.coeffs.rows() != basis.d || basis.coeffs.cols() != basis.d) {
    throw ConfigError("superposition basis must be a square d x d matrix");
  }
  const Eigen::MatrixXcd gram = basis.coeffs * basis.coeffs.adjoint();
  const double dev = (gram - Eigen::MatrixXcd::Identity(basis.d, basis.d)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw ConfigError("superposition basis is not unitary (deviation " + std::to_string(dev) +
                      "); run gram_schmidt on the seed first");
  }
}

Eigen::MatrixXcd gram_schmidt(const Eigen::MatrixXcd& seed) {
  if (seed.rows() != seed.cols() || seed.rows() < 1) {
    throw ConfigError("gram_schmidt expects a square matrix");
  }
  Eigen::MatrixXcd q = seed;
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    for (Eigen::Index p = 0; p < r; ++p) {
      const std::complex<double> proj = q.row(p).conjugate().cwiseProduct(q.row(r)).sum();
      q.row(r) -= proj * q.row(p);
    }
    const double norm = q.row(r).norm();
    if (norm <= 1e-8 * std::max(1.0, seed.row(r).norm())) {
      throw ConfigError("row " + std::to_string(r) +
                        " is linearly dependent on earlier rows; cannot orthonormalize");
    }
    q.row(r) /= norm;
  }
  return q;
}

SuperpositionBasis demo_basis_4() {
  Eigen::MatrixXcd seed(4, 4);
  seed << 0.267, 0.413, -0.785, -0.376,
          0.187, 0.593, 0.610, -0.491,
          0.936, -0.324, 0.103, 0.094,
          0.134, 0.611, -0.006, 0.780;
  SuperpositionBasis basis;
  basis.d = 4;
  basis.coeffs = gram_schmidt(seed);
  return basis;
}

SuperpositionWaveform mix_waveforms(const Eigen::VectorXcd& coeffs,
                                    const std::vector<ModulationWaveform>& base,
                                    const Wavepacket& carrier) {
  if (base.empty() || coeffs.size() != static_cast<Eigen::Index>(base.size())) {
    throw ConfigError("coefficient count " + std::to_string(coeffs.size()) +
                      " does not match " + std::to_string(base.size()) + " base waveforms");
  }
  SuperpositionWaveform out;
  out.m.grid = base.front().grid;
  out.m.samples = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(out.m.grid.n));
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (!(base[j].grid == out.m.grid)) {
      throw ConfigError("base waveforms do not share one grid");
    }
    out.m.samples += coeffs[static_cast<Eigen::Index>(j)] * base[j].samples;
  }
  const double peak = out.m.samples.abs().maxCoeff();
  if (!(peak > 0.0)) throw ConfigError("mixed waveform vanished; check the coefficients");
  out.scale = 1.0 / peak;
  out.m.samples *= out.scale;
  validate_passive(out.m);

  const Wavepacket projected = modulate(carrier, out.m);
  out.power_loss = 1.0 - projected.norm_squared() / carrier.norm_squared();
  return out;
}

SuperpositionWaveform superposition_waveform(const SuperpositionBasis& basis, int row,
                                             const std::vector<ModulationWaveform>& base,
                                             const Wavepacket& carrier) {
  validate_unitary(basis);
  if (row < 0 || row >= basis.d) {
    throw ConfigError("basis row " + std::to_string(row) + " out of range for d = " +
                      std::to_string(basis.d));
  }
  return mix_waveforms(basis.coeffs.row(row).transpose(), base, carrier);
}

SuperpositionSymbols make_superposition_symbols(const SuperpositionBasis& basis,
                                                const SymbolSet& base) {
  if (basis.d != base.d) {
    throw ConfigError("basis dimension does not match the base symbol count");
  }
  SuperpositionSymbols out;
  out.set.d = basis.d;
  out.set.scheme = Scheme::kSuperposition;
  out.set.carrier = base.carrier;
  out.set.eom = base.eom;
  out.set.waveforms.reserve(static_cast<std::size_t>(basis.d));
  for (int r = 0; r < basis.d; ++r) {
    SuperpositionWaveform sw = superposition_waveform(basis, r, base.waveforms, base.carrier);
    out.scales.push_back(sw.scale);
    out.power_losses.push_back(sw.power_loss);
    out.set.waveforms.push_back(std::move(sw.m));
  }
  return out;
}

}  // namespace tempo
