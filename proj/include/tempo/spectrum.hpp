#pragma once

#include <Eigen/Core>

#include "tempo/pulse.hpp"

namespace tempo {

// Spectral samples on the conjugate frequency grid, physical convention:
//   f~(nu_k) = sum_i f(t_i) exp(-2*pi*i*nu_k*t_i) dt.
// Parseval holds exactly: sum |f~|^2 dnu = sum |f|^2 dt.
struct Spectrum {
  FreqGrid grid;
  Eigen::ArrayXcd samples;

  double norm_squared() const { return samples.abs2().sum() * grid.dnu; }
  Eigen::ArrayXd intensity() const { return samples.abs2(); }
};

Spectrum to_spectrum(const Wavepacket& w);
Wavepacket from_spectrum(const Spectrum& s, const TimeGrid& grid);

// FWHM of |f~|^2 measured on the sampled spectrum.
double measured_linewidth(const Wavepacket& w);

}  // namespace tempo
