#include "tempo/spectrum.hpp"

#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

using Cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One FFT object per thread: kissfft plans are cached per size inside the
// object and are not safe to share across threads.
Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

Eigen::ArrayXcd linear_phase(Eigen::Index n, double step, double offset) {
  // exp(-i*2*pi*(offset + k*step)) for k = 0..n-1
  Eigen::ArrayXcd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ang = -kTwoPi * (offset + static_cast<double>(k) * step);
    out[k] = Cd(std::cos(ang), std::sin(ang));
  }
  return out;
}

}  // namespace

Spectrum to_spectrum(const Wavepacket& w) {
  const TimeGrid& g = w.grid;
  if (g.n < 2) throw ConfigError("to_spectrum: empty grid");
  const FreqGrid fg = conjugate_grid(g);

  // f~(nu_k) = dt * e^{-2pi i k dnu t0} * DFT[ x_i e^{-2pi i nu0 t_i} ]_k
  Eigen::ArrayXcd pre = linear_phase(g.n, fg.nu_start * g.dt, fg.nu_start * g.t_start);
  Eigen::VectorXcd y = (w.samples * pre).matrix();
  Eigen::VectorXcd F(g.n);
  thread_fft().fwd(F, y);

  Spectrum s;
  s.grid = fg;
  Eigen::ArrayXcd post = linear_phase(g.n, fg.dnu * g.t_start, 0.0);
  s.samples = F.array() * post * g.dt;
  return s;
}

Wavepacket from_spectrum(const Spectrum& s, const TimeGrid& grid) {
  if (s.grid.n != grid.n) throw ConfigError("from_spectrum: grid size mismatch");
  const FreqGrid check = conjugate_grid(grid);
  if (std::abs(check.dnu - s.grid.dnu) > 1e-12 * check.dnu)
    throw ConfigError("from_spectrum: frequency grid is not conjugate to the time grid");

  Eigen::ArrayXcd un_post = linear_phase(grid.n, s.grid.dnu * grid.t_start, 0.0).conjugate();
  Eigen::VectorXcd G = (s.samples * un_post).matrix();
  Eigen::VectorXcd y(grid.n);
  thread_fft().inv(y, G);

  Wavepacket w;
  w.grid = grid;
  Eigen::ArrayXcd un_pre =
      linear_phase(grid.n, s.grid.nu_start * grid.dt, s.grid.nu_start * grid.t_start).conjugate();
  w.samples = y.array() * un_pre / grid.dt;
  return w;
}

double measured_linewidth(const Wavepacket& w) {
  const Spectrum s = to_spectrum(w);
  return measure_fwhm(s.intensity(), s.grid.dnu);
}

}  // namespace tempo
