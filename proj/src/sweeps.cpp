#include "tempo/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

FilterSpec ratio_filter(const SweepContext& ctx, FilterShape shape, double ratio) {
  if (!(ratio > 0.0)) throw ConfigError("filter ratio must be positive");
  FilterSpec f;
  f.shape = shape;
  f.bandwidth = ratio * ctx.photon_linewidth;
  return f;
}

EomSpec ratio_eom(const SweepContext& ctx, double speed_ratio) {
  if (!(speed_ratio > 0.0)) throw ConfigError("modulator speed ratio must be positive");
  return EomSpec{speed_ratio * ctx.photon_linewidth};
}

DetectionMatrix submatrix(const DetectionMatrix& big, const std::vector<Eigen::Index>& idx) {
  DetectionMatrix sub;
  sub.d = static_cast<int>(idx.size());
  sub.p.resize(sub.d, sub.d);
  for (Eigen::Index a = 0; a < sub.d; ++a) {
    for (Eigen::Index b = 0; b < sub.d; ++b) {
      sub.p(a, b) = big.p(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return sub;
}

}  // namespace

SweepContext make_sweep_context(const PulseShape& pulse, int oversample, double span_factor) {
  SweepContext ctx;
  ctx.pulse = pulse;
  ctx.oversample = oversample;
  ctx.span_factor = span_factor;
  ctx.carrier = synth_wavepacket(pulse, make_grid(pulse.coherence_time, oversample, span_factor));
  ctx.photon_linewidth = analytic_linewidth(pulse);
  return ctx;
}

std::vector<ErsSweepRow> ers_vs_dimension_sweep(Scheme scheme, const SweepContext& ctx,
                                                const ErsSweepSpec& spec) {
  if (spec.dims.empty() || spec.speed_ratios.empty()) return {};
  for (int d : spec.dims) {
    if (d < 2) throw ConfigError("dimension must be >= 2, got d = " + std::to_string(d));
  }
  const FilterSpec filt = ratio_filter(ctx, spec.filter_shape, spec.filter_ratio);
  std::vector<ErsSweepRow> rows;

  if (scheme == Scheme::kPfm) {
    if (spec.walsh_n.empty()) throw ConfigError("phase-flip sweep needs at least one Walsh order");
    const int d_max = *std::max_element(spec.dims.begin(), spec.dims.end());
    for (int n : spec.walsh_n) {
      if (d_max > n) {
        throw ConfigError("dimension " + std::to_string(d_max) + " exceeds Walsh order " +
                          std::to_string(n));
      }
      const WalshMatrix w = walsh_matrix(n);
      for (double ratio : spec.speed_ratios) {
        const PfmSymbols big = make_pfm_symbols(ctx.carrier, ratio_eom(ctx, ratio), n, d_max);
        const DetectionMatrix bigm = detection_matrix(big.set, filt, spec.jobs);
        for (int d : spec.dims) {
          const std::vector<int> picked = greedy_max_flip_rows(w, d);
          std::vector<Eigen::Index> idx;
          idx.reserve(picked.size());
          for (int r : picked) {
            const auto it = std::lower_bound(big.rows.begin(), big.rows.end(), r);
            if (it == big.rows.end() || *it != r) {
              throw ResolutionError("greedy selection lost its nesting; row " +
                                    std::to_string(r) + " missing at d = " + std::to_string(d_max));
            }
            idx.push_back(static_cast<Eigen::Index>(it - big.rows.begin()));
          }
          const ErsResult e = ers(submatrix(bigm, idx));
          rows.push_back({n, d, ratio, (d - 1) / ratio, e.ers, e.mean_detection_efficiency});
        }
      }
    }
    return rows;
  }

  if (scheme != Scheme::kLinearRamp) {
    throw ConfigError("ERS sweep supports the phase-flip and linear-ramp schemes");
  }
  for (double ratio : spec.speed_ratios) {
    for (int d : spec.dims) {
      const SymbolSet set = make_ramp_symbols(ctx.carrier, ratio_eom(ctx, ratio), d);
      const ErsResult e = ers(detection_matrix(set, filt, spec.jobs));
      rows.push_back({0, d, ratio, (d - 1) / ratio, e.ers, e.mean_detection_efficiency});
    }
  }
  return rows;
}

std::vector<MiSweepPoint> filter_bandwidth_sweep(const SweepContext& ctx,
                                                 const MiSweepSpec& spec) {
  if (spec.d < 2) throw ConfigError("mutual-information sweep needs d >= 2");
  if (spec.filter_ratios.empty()) throw ConfigError("filter ratio grid is empty");
  for (double a : spec.amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ConfigError("superposition amplitude must lie in [0, 1], got " + std::to_string(a));
    }
  }
  const EomSpec eom = ratio_eom(ctx, spec.speed_ratio);
  const SymbolSet base = make_ramp_symbols(ctx.carrier, eom, spec.d);

  std::vector<MiSweepPoint> points;
  for (double a : spec.amplitudes) {
    // Pairwise mixture of each base symbol with its cyclic partner.
    SymbolSet mixed;
    mixed.d = spec.d;
    mixed.scheme = a == 0.0 ? Scheme::kLinearRamp : Scheme::kSuperposition;
    mixed.carrier = ctx.carrier;
    mixed.eom = eom;
    const std::complex<double> partner =
        a * std::exp(std::complex<double>(0.0, spec.phase));
    const double main = std::sqrt(1.0 - a * a);
    for (int k = 0; k < spec.d; ++k) {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(spec.d);
      c[k] += main;
      c[((k + spec.pairing_offset) % spec.d + spec.d) % spec.d] += partner;
      mixed.waveforms.push_back(mix_waveforms(c, base.waveforms, ctx.carrier).m);
    }

    const std::size_t first = points.size();
    for (double ratio : spec.filter_ratios) {
      const FilterSpec filt = ratio_filter(ctx, spec.filter_shape, ratio);
      const MiResult mi =
          mutual_information(detection_matrix(mixed, filt, spec.jobs), Eigen::VectorXd());
      points.push_back({ratio, a, mi, false});
    }
    std::size_t best = first;
    for (std::size_t i = first; i < points.size(); ++i) {
      if (points[i].mi.bits_per_symbol > points[best].mi.bits_per_symbol) best = i;
    }
    points[best].is_peak = true;
  }
  return points;
}

std::vector<LossSweepRow> loss_sweep(const SweepContext& ctx, const LossSweepSpec& spec) {
  if (spec.dims.empty() || spec.losses.empty()) return {};
  const FilterSpec filt = ratio_filter(ctx, spec.filter_shape, spec.filter_ratio);
  const EomSpec eom = ratio_eom(ctx, spec.speed_ratio);
  std::vector<LossSweepRow> rows;
  for (int d : spec.dims) {
    const SymbolSet set = make_ramp_symbols(ctx.carrier, eom, d);
    const DetectionMatrix base = detection_matrix(set, filt, spec.jobs);
    for (double loss : spec.losses) {
      ChannelModel model;
      model.loss = loss;
      model.dark_rate = spec.dark_rate;
      model.gate_window = spec.gate_window;
      rows.push_back({loss, d, ers(degrade(base, model)).ers});
    }
  }
  return rows;
}

}  // namespace tempo
