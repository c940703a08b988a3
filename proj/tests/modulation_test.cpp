#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tempo/errors.hpp"
#include "tempo/modulation.hpp"
#include "tempo/spectrum.hpp"
#include "test_util.hpp"

using namespace tempo;

namespace {

constexpr double kPi = std::numbers::pi;

Wavepacket fine_carrier() {
  PulseShape p;
  p.coherence_time = 100e-9;
  return synth_wavepacket(p, make_grid(p.coherence_time, 4, 8));
}

// Phase at the midpoint of each partition segment.
std::vector<double> segment_phases(const PhaseProfile& prof, const Partition& part) {
  std::vector<double> out;
  for (int s = 0; s < part.n(); ++s) {
    const double mid = 0.5 * (part.boundaries[s] + part.boundaries[s + 1]);
    const auto i = static_cast<Eigen::Index>((mid - prof.grid.t_start) / prof.grid.dt);
    out.push_back(prof.phase[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("equal-intensity partition splits the pulse evenly") {
  const Wavepacket w = fine_carrier();
  const Partition part = equal_intensity_partition(w, 16);
  REQUIRE(part.n() == 16);
  CHECK(part.boundaries.front() == doctest::Approx(-w.grid.span() / 2).epsilon(1e-12));
  CHECK(part.boundaries.back() == doctest::Approx(w.grid.span() / 2).epsilon(1e-12));

  const Eigen::ArrayXd intensity = w.intensity();
  for (int s = 0; s < 16; ++s) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < w.grid.n; ++i) {
      const double t = w.grid.time(i);
      if (t >= part.boundaries[s] && t < part.boundaries[s + 1]) {
        mass += intensity[i] * w.grid.dt;
      }
    }
    CHECK(std::abs(mass - 1.0 / 16) < 1e-3);
  }
  for (int s = 0; s < 16; ++s) CHECK(part.boundaries[s] < part.boundaries[s + 1]);
}

TEST_CASE("partition of a symmetric pulse in two halves cuts at the center") {
  const Wavepacket w = fine_carrier();
  const Partition part = equal_intensity_partition(w, 2);
  CHECK(std::abs(part.boundaries[1]) <= w.grid.dt);
}

TEST_CASE("partition of a flat intensity is uniform") {
  Wavepacket w;
  w.grid = make_grid(100e-9, 1, 8);
  const double amp = 1.0 / std::sqrt(w.grid.span());
  w.samples = Eigen::ArrayXcd::Constant(w.grid.n, amp);
  const Partition part = equal_intensity_partition(w, 4);
  const double quarter = w.grid.span() / 4;
  for (int s = 0; s <= 4; ++s) {
    CHECK(std::abs(part.boundaries[s] - (-w.grid.span() / 2 + s * quarter)) <= w.grid.dt);
  }
}

TEST_CASE("partition rejects more segments than samples") {
  Wavepacket w;
  w.grid = make_grid(100e-9, 1, 8);
  w.samples = Eigen::ArrayXcd::Constant(w.grid.n, 1.0 / std::sqrt(w.grid.span()));
  CHECK_THROWS_AS(equal_intensity_partition(w, static_cast<int>(w.grid.n) + 1), ConfigError);
}

TEST_CASE("phase profile follows the Walsh row, pi on +1 and 0 on -1") {
  const Wavepacket w = fine_carrier();
  const Partition part = equal_intensity_partition(w, 4);
  const WalshMatrix walsh = walsh_matrix(4);

  const PhaseProfile row0 = pfm_phase_profile(walsh, 0, part);
  CHECK(row0.phase.minCoeff() == doctest::Approx(kPi));
  CHECK(row0.phase.maxCoeff() == doctest::Approx(kPi));

  const PhaseProfile row1 = pfm_phase_profile(walsh, 1, part);
  const std::vector<double> phases = segment_phases(row1, part);
  CHECK(phases[0] == doctest::Approx(kPi));
  CHECK(phases[1] == doctest::Approx(0.0));
  CHECK(phases[2] == doctest::Approx(kPi));
  CHECK(phases[3] == doctest::Approx(0.0));
}

TEST_CASE("ideal phase-flip symbols are orthogonal") {
  const Wavepacket w = fine_carrier();
  const EomSpec ideal;  // infinite bandwidth
  for (int n : {4, 8, 16}) {
    const PfmSymbols sym = make_pfm_symbols(w, ideal, n, n);
    for (int a = 0; a < n; ++a) {
      const Wavepacket psi_a = modulate(w, sym.set.waveforms[a]);
      for (int b = a + 1; b < n; ++b) {
        const Wavepacket psi_b = modulate(w, sym.set.waveforms[b]);
        CHECK(std::norm(inner_product(psi_a, psi_b)) < 1e-3);
      }
    }
  }
}

TEST_CASE("infinite modulator bandwidth leaves the phase untouched") {
  const Wavepacket w = fine_carrier();
  const Partition part = equal_intensity_partition(w, 8);
  const PhaseProfile p = pfm_phase_profile(walsh_matrix(8), 3, part);
  const PhaseProfile q = apply_eom_bandwidth(p, EomSpec{});
  CHECK((q.phase - p.phase).abs().maxCoeff() == 0.0);
}

TEST_CASE("smoothed step rises in 0.68/bandwidth") {
  // 10-90% rise of a gaussian-smoothed step: 2 * 1.2816 * sigma with
  // sigma = sqrt(ln 2)/(pi B), i.e. 0.6792/B.
  const TimeGrid grid = make_grid(100e-9, 4, 8);
  PhaseProfile step;
  step.grid = grid;
  step.phase = Eigen::ArrayXd::Zero(grid.n);
  for (Eigen::Index i = grid.n / 2; i < grid.n; ++i) step.phase[i] = kPi;

  const double bandwidth = 2.84e7;
  const PhaseProfile smooth = apply_eom_bandwidth(step, EomSpec{bandwidth});

  double t10 = 0.0;
  double t90 = 0.0;
  for (Eigen::Index i = 1; i < grid.n; ++i) {
    const double prev = smooth.phase[i - 1];
    const double cur = smooth.phase[i];
    const auto crossing = [&](double level) {
      return grid.time(i - 1) + (level - prev) / (cur - prev) * grid.dt;
    };
    if (prev < 0.1 * kPi && cur >= 0.1 * kPi) t10 = crossing(0.1 * kPi);
    if (prev < 0.9 * kPi && cur >= 0.9 * kPi) t90 = crossing(0.9 * kPi);
  }
  const double rise = t90 - t10;
  CHECK(rise == doctest::Approx(0.6792 / bandwidth).epsilon(0.10));
}

TEST_CASE("applying the smoothing twice equals one pass at B/sqrt(2)") {
  const TimeGrid grid = make_grid(100e-9, 4, 8);
  PhaseProfile step;
  step.grid = grid;
  step.phase = Eigen::ArrayXd::Zero(grid.n);
  for (Eigen::Index i = grid.n / 2; i < grid.n; ++i) step.phase[i] = kPi;

  const double bandwidth = 2.84e7;
  const PhaseProfile twice =
      apply_eom_bandwidth(apply_eom_bandwidth(step, EomSpec{bandwidth}), EomSpec{bandwidth});
  const PhaseProfile once = apply_eom_bandwidth(step, EomSpec{bandwidth / std::sqrt(2.0)});
  CHECK((twice.phase - once.phase).abs().maxCoeff() < 1e-6);
}

TEST_CASE("linear phase is an eigen-input of the smoothing") {
  const TimeGrid grid = make_grid(100e-9, 4, 8);
  PhaseProfile ramp;
  ramp.grid = grid;
  ramp.phase = 3e7 * grid.times();
  const double bandwidth = 2.84e7;
  const PhaseProfile smooth = apply_eom_bandwidth(ramp, EomSpec{bandwidth});
  // Away from the clamped edges the ramp must pass through unchanged.
  const auto margin = static_cast<Eigen::Index>(grid.n / 10);
  double worst = 0.0;
  for (Eigen::Index i = margin; i < grid.n - margin; ++i) {
    worst = std::max(worst, std::abs(smooth.phase[i] - ramp.phase[i]));
  }
  CHECK(worst < 1e-9 * ramp.phase.abs().maxCoeff());
}

TEST_CASE("unrepresentable modulator bandwidths are rejected") {
  const TimeGrid grid = make_grid(100e-9, 1, 32);
  PhaseProfile p;
  p.grid = grid;
  p.phase = Eigen::ArrayXd::Zero(grid.n);
  // Too fast: 1/bandwidth below two samples.
  CHECK_THROWS_AS(apply_eom_bandwidth(p, EomSpec{1.2 / (2.0 * grid.dt)}), ResolutionError);
  // Too slow: kernel support exceeds the whole window.
  CHECK_THROWS_AS(apply_eom_bandwidth(p, EomSpec{1e5}), ResolutionError);
}

TEST_CASE("greedy selection beats the first-d baseline") {
  const WalshMatrix w = walsh_matrix(16);
  const std::vector<int> first_d = {0, 1, 2, 3, 4};
  const std::vector<int> picked = greedy_max_flip_rows(w, 5);
  CHECK(average_pairwise_flips(w, picked) >= average_pairwise_flips(w, first_d));
}

TEST_CASE("ramp symbols are pure tones at k * B / (d - 1)") {
  // A 1 GHz shift needs headroom beyond the default Nyquist rate, so use a
  // finer grid than the other cases.
  PulseShape pulse;
  const TimeGrid grid = make_grid(pulse.coherence_time, 8, 8);
  const Wavepacket carrier = synth_wavepacket(pulse, grid);
  const EomSpec eom{1e9};

  const ModulationWaveform m0 = linear_ramp_waveform(0, 16, eom, grid);
  CHECK((m0.samples - 1.0).abs().maxCoeff() < 1e-12);

  const FreqGrid fgrid = conjugate_grid(grid);
  for (const auto& [k, expected] :
       std::vector<std::pair<int, double>>{{5, 1e9 * 5.0 / 15.0}, {15, 1e9}}) {
    const Wavepacket shifted = modulate(carrier, linear_ramp_waveform(k, 16, eom, grid));
    const Spectrum s = to_spectrum(shifted);
    Eigen::Index peak = 0;
    s.intensity().maxCoeff(&peak);
    CHECK(std::abs(fgrid.freq(peak) - expected) <= fgrid.dnu);
  }

  CHECK_THROWS_AS(linear_ramp_waveform(16, 16, eom, grid), ConfigError);
  CHECK_THROWS_AS(linear_ramp_waveform(-1, 16, eom, grid), ConfigError);
}

TEST_CASE("modulation preserves norm exactly when |m| = 1") {
  const SweepContext ctx = test::small_context();
  const PfmSymbols sym = make_pfm_symbols(ctx.carrier, EomSpec{20 * ctx.photon_linewidth}, 8, 4);
  for (const ModulationWaveform& m : sym.set.waveforms) {
    CHECK((m.samples.abs() - 1.0).abs().maxCoeff() < 1e-12);
    validate_passive(m);
    CHECK(modulate(ctx.carrier, m).norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("amplitude modulation loses the squared amplitude") {
  const SweepContext ctx = test::small_context();
  ModulationWaveform m;
  m.grid = ctx.carrier.grid;
  m.samples = Eigen::ArrayXcd::Constant(m.grid.n, 1.0 / std::sqrt(2.0));
  CHECK(modulate(ctx.carrier, m).norm_squared() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("modulation requires a shared grid") {
  const SweepContext ctx = test::small_context();
  ModulationWaveform m;
  m.grid = make_grid(100e-9, 1, 16);
  m.samples = Eigen::ArrayXcd::Ones(m.grid.n);
  CHECK_THROWS_AS(modulate(ctx.carrier, m), ConfigError);
}

// Pairwise overlap of ideal ramp symbols is the characteristic function of
// the pulse intensity at the shift spacing. The gaussian envelope decays fast
// enough for 3-linewidth spacing; the exponential envelope has Lorentzian
// spectral tails and needs about 5 linewidths to clear the same bound.
static double worst_ramp_overlap(PulseKind kind, double spacing_linewidths, int d) {
  const SweepContext ctx = test::small_context(kind);
  const double b = spacing_linewidths * (d - 1) * ctx.photon_linewidth;
  const SymbolSet set = make_ramp_symbols(ctx.carrier, EomSpec{b}, d);
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    const Wavepacket pa = modulate(ctx.carrier, set.waveforms[a]);
    for (int c = a + 1; c < d; ++c) {
      const Wavepacket pc = modulate(ctx.carrier, set.waveforms[c]);
      worst = std::max(worst, std::norm(inner_product(pa, pc)));
    }
  }
  return worst;
}

TEST_CASE("widely spaced ramp symbols are near-orthogonal") {
  CHECK(worst_ramp_overlap(PulseKind::kGaussian, 3.0, 4) < 1e-2);
  CHECK(worst_ramp_overlap(PulseKind::kTwoSidedExponential, 5.0, 4) < 1e-2);
  // Closed form for the exponential envelope: |<a|b>| = 1 / (1 + (sqrt(2)-1) s^2)
  // at s linewidths of spacing, so 3 linewidths is not yet orthogonal.
  CHECK(worst_ramp_overlap(PulseKind::kTwoSidedExponential, 3.0, 2) ==
        doctest::Approx(0.044738).epsilon(0.01));
}
