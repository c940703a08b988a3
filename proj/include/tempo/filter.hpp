#pragma once

#include <Eigen/Core>
#include <string>

#include "tempo/spectrum.hpp"

namespace tempo {

enum class FilterShape { kGaussian, kLorentzian, kRectangular };

FilterShape filter_shape_from_name(const std::string& name);
std::string filter_shape_name(FilterShape s);

// Spectral filter placed after demodulation. bandwidth is the FWHM of the
// power transmission |T|^2 in Hz; center offsets the passband; the peak
// amplitude transmission models insertion loss (1 = lossless). The default
// shape is the single-pole cavity response; reference runs typically select
// gaussian explicitly and record the choice in their output metadata.
struct FilterSpec {
  FilterShape shape = FilterShape::kLorentzian;
  double bandwidth = 0.0;                    // [Hz], FWHM of |T|^2
  double center = 0.0;                       // [Hz]
  double peak_amplitude_transmission = 1.0;  // (0, 1]
};

// Complex amplitude transmission sampled on the grid. Throws ResolutionError
// when fewer than 4 bins span the FWHM (the passband would be aliased).
Eigen::ArrayXcd filter_amplitude_response(const FilterSpec& spec, const FreqGrid& grid);

}  // namespace tempo
