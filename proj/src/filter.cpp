#include "tempo/filter.hpp"

#include <cmath>
#include <numbers>

#include "tempo/errors.hpp"

namespace tempo {

FilterShape filter_shape_from_name(const std::string& name) {
  if (name == "gaussian") return FilterShape::kGaussian;
  if (name == "lorentzian") return FilterShape::kLorentzian;
  if (name == "rectangular") return FilterShape::kRectangular;
  throw ConfigError("unknown filter shape '" + name +
                    "' (expected gaussian, lorentzian, or rectangular)");
}

std::string filter_shape_name(FilterShape s) {
  switch (s) {
    case FilterShape::kGaussian: return "gaussian";
    case FilterShape::kLorentzian: return "lorentzian";
    case FilterShape::kRectangular: return "rectangular";
  }
  throw ConfigError("unknown filter shape");
}

Eigen::ArrayXcd filter_amplitude_response(const FilterSpec& spec, const FreqGrid& grid) {
  if (!(spec.bandwidth > 0.0) || !std::isfinite(spec.bandwidth)) {
    throw ConfigError("filter bandwidth must be positive and finite");
  }
  if (!(spec.peak_amplitude_transmission > 0.0) || spec.peak_amplitude_transmission > 1.0) {
    throw ConfigError("peak amplitude transmission must lie in (0, 1]");
  }
  if (!std::isfinite(spec.center)) throw ConfigError("filter center must be finite");
  if (spec.bandwidth / grid.dnu < 4.0) {
    throw ResolutionError("filter FWHM spans fewer than 4 frequency bins (" +
                          std::to_string(spec.bandwidth / grid.dnu) +
                          "); widen the time window");
  }

  const auto n = static_cast<Eigen::Index>(grid.n);
  Eigen::ArrayXcd t(n);
  const double g = spec.bandwidth;
  const double t0 = spec.peak_amplitude_transmission;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = grid.freq(static_cast<std::size_t>(k)) - spec.center;
    switch (spec.shape) {
      case FilterShape::kGaussian:
        // |T|^2 = t0^2 exp(-4 ln2 x^2 / g^2): power FWHM = g.
        t[k] = t0 * std::exp(-2.0 * std::numbers::ln2 * x * x / (g * g));
        break;
      case FilterShape::kLorentzian:
        // Single-pole cavity response; |T|^2 = t0^2 / (1 + 4 x^2 / g^2).
        t[k] = t0 / std::complex<double>(1.0, 2.0 * x / g);
        break;
      case FilterShape::kRectangular:
        t[k] = (std::abs(x) <= 0.5 * g) ? t0 : 0.0;
        break;
    }
  }
  return t;
}

}  // namespace tempo
