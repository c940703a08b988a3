#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>

#include "tempo/grid.hpp"

namespace tempo {

enum class PulseKind {
  kGaussian,
  kOneSidedExponential,
  kTwoSidedExponential,
};

PulseKind pulse_kind_from_name(const std::string& name);
std::string pulse_kind_name(PulseKind kind);

// Analytic pulse family. coherence_time is the FWHM of the *intensity*
// |f(t)|^2; shapes are placed so the intensity median sits at t = 0.
struct PulseShape {
  PulseKind kind = PulseKind::kTwoSidedExponential;
  double coherence_time = 100e-9;  // [s]
};

// FWHM of the spectral intensity |f~(nu)|^2 in Hz, closed form per shape.
// This is the photon linewidth used to convert bandwidth ratios (N,
// filter/photon) into absolute frequencies, so configs stay exact and
// grid-independent.
double analytic_linewidth(const PulseShape& shape);

// Complex envelope sampled on a grid. Normalized states satisfy
// sum |f_i|^2 dt = 1 (midpoint Riemann sum).
struct Wavepacket {
  TimeGrid grid;
  Eigen::ArrayXcd samples;

  double norm_squared() const;
  Eigen::ArrayXd intensity() const { return samples.abs2(); }
};

// Samples the shape on the grid and normalizes. Throws ResolutionError when
// the grid truncates the envelope (edge magnitude > 1e-6 of peak or truncated
// norm fraction > 1e-6) and ConfigError when the grid spans fewer than four
// coherence times or undersamples the pulse.
Wavepacket synth_wavepacket(const PulseShape& shape, const TimeGrid& grid);

// <a|b> = sum conj(a_i) b_i dt on a shared grid.
std::complex<double> inner_product(const Wavepacket& a, const Wavepacket& b);

// Full width at half maximum of a sampled non-negative curve, with linear
// interpolation at the two half-max crossings. axis_step is the sample
// spacing; the result is in the same units. Throws ConfigError for flat or
// multi-peaked input (more than one contiguous region above half max).
double measure_fwhm(const Eigen::ArrayXd& values, double axis_step);

}  // namespace tempo
