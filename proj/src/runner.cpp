#include "tempo/runner.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "tempo/errors.hpp"
#include "tempo/sweeps.hpp"

namespace tempo {

namespace {

struct CommonParams {
  PulseShape pulse;
  int oversample = 8;
  double span_factor = 8.0;
  FilterShape filter_shape = FilterShape::kGaussian;
  std::uint64_t seed = 0;
};

CommonParams parse_common(const Config& cfg, const std::string& expected_run) {
  const std::string run = cfg.require_string("run");
  if (run != expected_run) {
    throw ConfigError("config is for run = " + run + ", not " + expected_run);
  }
  CommonParams c;
  c.pulse.kind = pulse_kind_from_name(cfg.get_string("pulse.shape", "two_sided_exponential"));
  c.pulse.coherence_time = cfg.get_time("pulse.coherence_time", 100e-9);
  if (!(c.pulse.coherence_time > 0.0)) {
    throw ConfigError("pulse.coherence_time: must be positive");
  }
  c.oversample = cfg.get_int("grid.oversample", 8);
  c.span_factor = cfg.get_real("grid.span_factor", 8.0);
  // The analytic reference shape; the single-pole cavity shape is available
  // via filter.shape = lorentzian. Recorded in output metadata either way.
  c.filter_shape = filter_shape_from_name(cfg.get_string("filter.shape", "gaussian"));
  const int seed = cfg.get_int("seed", 0);
  if (seed < 0) throw ConfigError("seed: must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  (void)cfg.get_string("output.path", "");  // consumed here, used by the CLI
  return c;
}

std::vector<std::pair<std::string, std::string>> base_metadata(const Config& cfg,
                                                               const CommonParams& c,
                                                               const std::string& run) {
  return {
      {"config_hash", hex64(fnv1a64(cfg.canonical()))},
      {"tool_version", kToolVersion},
      {"run", run},
      {"pulse_shape", pulse_kind_name(c.pulse.kind)},
      {"coherence_time_s", format_real(c.pulse.coherence_time)},
      {"filter_shape", filter_shape_name(c.filter_shape)},
  };
}

void check_dims(const std::vector<int>& dims, const char* key) {
  for (int d : dims) {
    if (d < 2) {
      throw ConfigError(std::string(key) + ": dimension must be >= 2, got " + std::to_string(d));
    }
  }
}

void check_positive(const std::vector<double>& values, const char* key) {
  for (double v : values) {
    if (!(v > 0.0)) {
      throw ConfigError(std::string(key) + ": values must be positive, got " + format_real(v));
    }
  }
}

// ---- pfm-ers ---------------------------------------------------------------

struct PfmErsParams {
  CommonParams common;
  ErsSweepSpec spec;
};

PfmErsParams parse_pfm_ers(const Config& cfg, int jobs) {
  PfmErsParams p;
  p.common = parse_common(cfg, "pfm-ers");
  p.spec.walsh_n = cfg.get_int_list("sweep.walsh_n");
  for (int n : p.spec.walsh_n) {
    if (n < 4 || (n & (n - 1)) != 0) {
      throw ConfigError("sweep.walsh_n: must be powers of two >= 4, got " + std::to_string(n));
    }
  }
  p.spec.speed_ratios = cfg.get_real_list("sweep.speed_ratio");
  check_positive(p.spec.speed_ratios, "sweep.speed_ratio");
  p.spec.dims = cfg.get_int_list("sweep.d");
  check_dims(p.spec.dims, "sweep.d");
  for (int d : p.spec.dims) {
    for (int n : p.spec.walsh_n) {
      if (d > n) {
        throw ConfigError("sweep.d: dimension " + std::to_string(d) + " exceeds Walsh order " +
                          std::to_string(n));
      }
    }
  }
  p.spec.filter_shape = p.common.filter_shape;
  p.spec.filter_ratio = cfg.get_real("filter.ratio", 1.0);
  if (!(p.spec.filter_ratio > 0.0)) throw ConfigError("filter.ratio: must be positive");
  p.spec.jobs = jobs;
  cfg.reject_unknown();
  return p;
}

// ---- ramp-ers --------------------------------------------------------------

struct RampErsParams {
  CommonParams common;
  ErsSweepSpec spec;
};

RampErsParams parse_ramp_ers(const Config& cfg, int jobs) {
  RampErsParams p;
  p.common = parse_common(cfg, "ramp-ers");
  p.spec.speed_ratios = cfg.get_real_list("sweep.speed_ratio");
  check_positive(p.spec.speed_ratios, "sweep.speed_ratio");
  p.spec.dims = cfg.get_int_list("sweep.d");
  check_dims(p.spec.dims, "sweep.d");
  p.spec.filter_shape = p.common.filter_shape;
  p.spec.filter_ratio = cfg.get_real("filter.ratio", 1.0);
  if (!(p.spec.filter_ratio > 0.0)) throw ConfigError("filter.ratio: must be positive");
  p.spec.jobs = jobs;
  cfg.reject_unknown();
  return p;
}

// ---- basis-demo ------------------------------------------------------------

struct BasisDemoParams {
  CommonParams common;
  int d = 4;
  double speed_ratio = 10.0;
  double filter_ratio = 2.0;
  std::string source;  // preset | seed | identity
};

BasisDemoParams parse_basis_demo(const Config& cfg, int /*jobs*/) {
  BasisDemoParams p;
  p.common = parse_common(cfg, "basis-demo");
  p.d = cfg.get_int("demo.d", 4);
  if (p.d < 2) throw ConfigError("demo.d: dimension must be >= 2");
  p.speed_ratio = cfg.get_real("demo.speed_ratio", 10.0);
  if (!(p.speed_ratio > 0.0)) throw ConfigError("demo.speed_ratio: must be positive");
  p.filter_ratio = cfg.get_real("filter.ratio", 2.0);
  if (!(p.filter_ratio > 0.0)) throw ConfigError("filter.ratio: must be positive");
  p.source = cfg.get_string("basis.source", "preset");
  if (p.source != "preset" && p.source != "seed" && p.source != "identity") {
    throw ConfigError("basis.source: expected preset, seed, or identity, got '" + p.source + "'");
  }
  if (p.source == "preset" && p.d != 4) {
    throw ConfigError("basis.source: the preset basis is 4 x 4; set demo.d = 4 or use seed");
  }
  cfg.reject_unknown();
  return p;
}

SuperpositionBasis demo_basis(const BasisDemoParams& p) {
  if (p.source == "preset") return demo_basis_4();
  SuperpositionBasis basis;
  basis.d = p.d;
  if (p.source == "identity") {
    basis.coeffs = Eigen::MatrixXcd::Identity(p.d, p.d);
    return basis;
  }
  // Seed-driven: complex Gaussian entries orthonormalized row by row.
  std::mt19937_64 rng(p.common.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd raw(p.d, p.d);
  for (Eigen::Index r = 0; r < p.d; ++r) {
    for (Eigen::Index c = 0; c < p.d; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      raw(r, c) = std::complex<double>(re, im);
    }
  }
  basis.coeffs = gram_schmidt(raw);
  return basis;
}

ResultTable matrix_table(const DetectionMatrix& m,
                         const std::vector<double>* power_losses) {
  ResultTable t;
  t.columns.push_back("k");
  for (int j = 0; j < m.d; ++j) t.columns.push_back("p_" + std::to_string(j));
  if (power_losses) t.columns.push_back("power_loss");
  for (Eigen::Index k = 0; k < m.d; ++k) {
    std::vector<double> row;
    row.push_back(static_cast<double>(k));
    for (Eigen::Index j = 0; j < m.d; ++j) row.push_back(m.p(k, j));
    if (power_losses) row.push_back((*power_losses)[static_cast<std::size_t>(k)]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---- mi-sweep --------------------------------------------------------------

struct MiParams {
  CommonParams common;
  MiSweepSpec spec;
};

MiParams parse_mi_sweep(const Config& cfg, int jobs) {
  MiParams p;
  p.common = parse_common(cfg, "mi-sweep");
  p.spec.d = cfg.get_int("mi.d", 16);
  if (p.spec.d < 2) throw ConfigError("mi.d: dimension must be >= 2");
  p.spec.speed_ratio = cfg.get_real("mi.speed_ratio", 100.0);
  if (!(p.spec.speed_ratio > 0.0)) throw ConfigError("mi.speed_ratio: must be positive");
  p.spec.amplitudes = cfg.get_real_list("mi.amplitude", {0.0});
  for (double a : p.spec.amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ConfigError("mi.amplitude: must lie in [0, 1], got " + format_real(a));
    }
  }
  p.spec.phase = cfg.get_real("mi.phase", 0.0);
  p.spec.pairing_offset = cfg.get_int("mi.pairing_offset", 1);
  p.spec.filter_shape = p.common.filter_shape;
  p.spec.filter_ratios = cfg.get_real_list("filter.ratio_grid");
  if (p.spec.filter_ratios.empty()) throw ConfigError("filter.ratio_grid: must not be empty");
  check_positive(p.spec.filter_ratios, "filter.ratio_grid");
  p.spec.jobs = jobs;
  cfg.reject_unknown();
  return p;
}

// ---- loss-sweep ------------------------------------------------------------

struct LossParams {
  CommonParams common;
  LossSweepSpec spec;
};

LossParams parse_loss_sweep(const Config& cfg, int jobs) {
  LossParams p;
  p.common = parse_common(cfg, "loss-sweep");
  p.spec.dims = cfg.get_int_list("loss.d");
  check_dims(p.spec.dims, "loss.d");
  p.spec.speed_ratio = cfg.get_real("loss.speed_ratio", 100.0);
  if (!(p.spec.speed_ratio > 0.0)) throw ConfigError("loss.speed_ratio: must be positive");
  p.spec.losses = cfg.get_real_list("loss.values");
  for (double x : p.spec.losses) {
    if (!(x >= 0.0 && x < 1.0)) {
      throw ConfigError("loss.values: must lie in [0, 1), got " + format_real(x));
    }
  }
  p.spec.dark_rate = cfg.get_rate("loss.dark_rate", 0.0);
  if (p.spec.dark_rate < 0.0) throw ConfigError("loss.dark_rate: must be non-negative");
  p.spec.gate_window = cfg.get_time("loss.gate_window", 0.0);
  if (p.spec.gate_window < 0.0) throw ConfigError("loss.gate_window: must be non-negative");
  p.spec.filter_shape = p.common.filter_shape;
  p.spec.filter_ratio = cfg.get_real("filter.ratio", 1.0);
  if (!(p.spec.filter_ratio > 0.0)) throw ConfigError("filter.ratio: must be positive");
  p.spec.jobs = jobs;
  cfg.reject_unknown();
  return p;
}

}  // namespace

ResultTable run_pfm_ers(const Config& cfg, int jobs) {
  const PfmErsParams p = parse_pfm_ers(cfg, jobs);
  const SweepContext ctx =
      make_sweep_context(p.common.pulse, p.common.oversample, p.common.span_factor);
  ResultTable t;
  t.metadata = base_metadata(cfg, p.common, "pfm-ers");
  t.metadata.emplace_back("scheme", scheme_name(Scheme::kPfm));
  t.metadata.emplace_back("filter_ratio", format_real(p.spec.filter_ratio));
  t.columns = {"n", "d", "N", "ERS", "mean_efficiency"};
  for (const ErsSweepRow& r : ers_vs_dimension_sweep(Scheme::kPfm, ctx, p.spec)) {
    t.rows.push_back({static_cast<double>(r.walsh_n), static_cast<double>(r.d), r.speed_ratio,
                      r.ers, r.mean_efficiency});
  }
  return t;
}

ResultTable run_ramp_ers(const Config& cfg, int jobs) {
  const RampErsParams p = parse_ramp_ers(cfg, jobs);
  const SweepContext ctx =
      make_sweep_context(p.common.pulse, p.common.oversample, p.common.span_factor);
  ResultTable t;
  t.metadata = base_metadata(cfg, p.common, "ramp-ers");
  t.metadata.emplace_back("scheme", scheme_name(Scheme::kLinearRamp));
  t.metadata.emplace_back("filter_ratio", format_real(p.spec.filter_ratio));
  t.columns = {"d", "N", "d_prime", "ERS", "mean_efficiency"};
  for (const ErsSweepRow& r : ers_vs_dimension_sweep(Scheme::kLinearRamp, ctx, p.spec)) {
    t.rows.push_back(
        {static_cast<double>(r.d), r.speed_ratio, r.normalized_dim, r.ers, r.mean_efficiency});
  }
  return t;
}

std::pair<ResultTable, ResultTable> run_basis_demo(const Config& cfg, int jobs) {
  const BasisDemoParams p = parse_basis_demo(cfg, jobs);
  const SweepContext ctx =
      make_sweep_context(p.common.pulse, p.common.oversample, p.common.span_factor);
  const EomSpec eom{p.speed_ratio * ctx.photon_linewidth};
  const SymbolSet base = make_ramp_symbols(ctx.carrier, eom, p.d);
  const SuperpositionSymbols sup = make_superposition_symbols(demo_basis(p), base);

  FilterSpec filt;
  filt.shape = p.common.filter_shape;
  filt.bandwidth = p.filter_ratio * ctx.photon_linewidth;

  auto meta = base_metadata(cfg, p.common, "basis-demo");
  meta.emplace_back("filter_ratio", format_real(p.filter_ratio));
  meta.emplace_back("speed_ratio", format_real(p.speed_ratio));
  meta.emplace_back("basis_source", p.source);
  meta.emplace_back("seed", std::to_string(p.common.seed));

  ResultTable comp = matrix_table(detection_matrix(base, filt, jobs), nullptr);
  comp.metadata = meta;
  comp.metadata.emplace_back("basis", "computational");
  ResultTable super = matrix_table(detection_matrix(sup.set, filt, jobs), &sup.power_losses);
  super.metadata = meta;
  super.metadata.emplace_back("basis", "superposition");
  return {std::move(comp), std::move(super)};
}

ResultTable run_mi_sweep(const Config& cfg, int jobs) {
  const MiParams p = parse_mi_sweep(cfg, jobs);
  const SweepContext ctx =
      make_sweep_context(p.common.pulse, p.common.oversample, p.common.span_factor);
  ResultTable t;
  t.metadata = base_metadata(cfg, p.common, "mi-sweep");
  t.metadata.emplace_back("scheme", scheme_name(Scheme::kLinearRamp));
  t.metadata.emplace_back("d", std::to_string(p.spec.d));
  t.metadata.emplace_back("speed_ratio", format_real(p.spec.speed_ratio));
  t.columns = {"filter_ratio", "a", "MI_bits", "erasure_prob", "is_peak"};
  for (const MiSweepPoint& pt : filter_bandwidth_sweep(ctx, p.spec)) {
    t.rows.push_back({pt.filter_ratio, pt.amplitude, pt.mi.bits_per_symbol,
                      pt.mi.erasure_probability, pt.is_peak ? 1.0 : 0.0});
  }
  return t;
}

ResultTable run_loss_sweep(const Config& cfg, int jobs) {
  const LossParams p = parse_loss_sweep(cfg, jobs);
  const SweepContext ctx =
      make_sweep_context(p.common.pulse, p.common.oversample, p.common.span_factor);
  ResultTable t;
  t.metadata = base_metadata(cfg, p.common, "loss-sweep");
  t.metadata.emplace_back("scheme", scheme_name(Scheme::kLinearRamp));
  t.metadata.emplace_back("dark_rate_per_s", format_real(p.spec.dark_rate));
  t.metadata.emplace_back("gate_window_s", format_real(p.spec.gate_window));
  t.columns = {"loss", "d", "ERS"};
  for (const LossSweepRow& r : loss_sweep(ctx, p.spec)) {
    t.rows.push_back({r.loss, static_cast<double>(r.d), r.ers});
  }
  return t;
}

std::string validate_config(const Config& cfg) {
  const std::string run = cfg.get_string("run", "");
  if (run == "pfm-ers") {
    parse_pfm_ers(cfg, 1);
  } else if (run == "ramp-ers") {
    parse_ramp_ers(cfg, 1);
  } else if (run == "basis-demo") {
    parse_basis_demo(cfg, 1);
  } else if (run == "mi-sweep") {
    parse_mi_sweep(cfg, 1);
  } else if (run == "loss-sweep") {
    parse_loss_sweep(cfg, 1);
  } else {
    throw ConfigError("run: expected pfm-ers, ramp-ers, basis-demo, mi-sweep, or loss-sweep, "
                      "got '" + run + "'");
  }
  return run;
}

std::string config_output_path(const Config& cfg) { return cfg.get_string("output.path", ""); }

}  // namespace tempo
