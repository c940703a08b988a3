#include <doctest.h>

#include <cmath>
#include <vector>

#include "tempo/errors.hpp"
#include "tempo/sweeps.hpp"
#include "test_util.hpp"

using namespace tempo;

TEST_CASE("sweep context records the carrier and its linewidth") {
  const SweepContext ctx = test::small_context();
  CHECK(ctx.carrier.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ctx.photon_linewidth == doctest::Approx(analytic_linewidth(ctx.pulse)).epsilon(1e-12));
}

TEST_CASE("nested greedy evaluation matches independent per-dimension runs") {
  const SweepContext ctx = test::small_context();
  ErsSweepSpec spec;
  spec.walsh_n = {16};
  spec.speed_ratios = {50.0};
  spec.dims = {2, 4};
  const std::vector<ErsSweepRow> joint = ers_vs_dimension_sweep(Scheme::kPfm, ctx, spec);
  REQUIRE(joint.size() == 2);

  for (std::size_t i = 0; i < joint.size(); ++i) {
    ErsSweepSpec single = spec;
    single.dims = {joint[i].d};
    const std::vector<ErsSweepRow> alone = ers_vs_dimension_sweep(Scheme::kPfm, ctx, single);
    REQUIRE(alone.size() == 1);
    CHECK(std::abs(joint[i].ers - alone[0].ers) < 1e-12);
    CHECK(std::abs(joint[i].mean_efficiency - alone[0].mean_efficiency) < 1e-12);
  }
}

TEST_CASE("ramp sweep rows carry the normalized dimension") {
  const SweepContext ctx = test::small_context();
  ErsSweepSpec spec;
  spec.speed_ratios = {40.0};
  spec.dims = {2, 3, 5};
  const std::vector<ErsSweepRow> rows = ers_vs_dimension_sweep(Scheme::kLinearRamp, ctx, spec);
  REQUIRE(rows.size() == 3);
  for (const ErsSweepRow& row : rows) {
    CHECK(row.walsh_n == 0);
    CHECK(row.speed_ratio == doctest::Approx(40.0));
    CHECK(row.normalized_dim == doctest::Approx((row.d - 1) / 40.0).epsilon(1e-12));
    CHECK(row.ers >= 0.0);
    CHECK(row.ers <= 1.0);
  }
  // Wide modulator range: more symbols pack in more crosstalk, never less.
  CHECK(rows[0].ers <= rows[2].ers + 1e-12);
}

TEST_CASE("phase-flip dimensions beyond the Walsh order are rejected") {
  const SweepContext ctx = test::small_context();
  ErsSweepSpec spec;
  spec.walsh_n = {8};
  spec.speed_ratios = {50.0};
  spec.dims = {2, 9};
  CHECK_THROWS_AS(ers_vs_dimension_sweep(Scheme::kPfm, ctx, spec), ConfigError);
}

TEST_CASE("mutual information sweep marks one peak per amplitude curve") {
  const SweepContext ctx = test::small_context();
  MiSweepSpec spec;
  spec.d = 4;
  spec.speed_ratio = 50.0;
  spec.filter_ratios = {1.0, 2.0, 4.0};
  spec.amplitudes = {0.0, 0.5};
  const std::vector<MiSweepPoint> points = filter_bandwidth_sweep(ctx, spec);
  REQUIRE(points.size() == 6);

  for (double a : {0.0, 0.5}) {
    double best = -1.0;
    double best_ratio = 0.0;
    int peaks = 0;
    for (const MiSweepPoint& pt : points) {
      if (pt.amplitude != a) continue;
      if (pt.mi.bits_per_symbol > best) {
        best = pt.mi.bits_per_symbol;
        best_ratio = pt.filter_ratio;
      }
      if (pt.is_peak) ++peaks;
    }
    CHECK(peaks == 1);
    for (const MiSweepPoint& pt : points) {
      if (pt.amplitude == a && pt.is_peak) CHECK(pt.filter_ratio == best_ratio);
    }
  }

  // Widening the filter admits more of the demodulated power, so the
  // erasure probability can only shrink along the curve.
  double prev = 2.0;
  for (const MiSweepPoint& pt : points) {
    if (pt.amplitude != 0.0) continue;
    CHECK(pt.mi.erasure_probability < prev);
    prev = pt.mi.erasure_probability;
  }
}

TEST_CASE("superposition amplitude costs mutual information") {
  const SweepContext ctx = test::small_context();
  MiSweepSpec spec;
  spec.d = 4;
  spec.speed_ratio = 50.0;
  spec.filter_ratios = {1.0, 2.0};
  spec.amplitudes = {0.0, 1.0 / std::sqrt(2.0)};
  const std::vector<MiSweepPoint> points = filter_bandwidth_sweep(ctx, spec);
  for (const MiSweepPoint& pure : points) {
    if (pure.amplitude != 0.0) continue;
    for (const MiSweepPoint& mixed : points) {
      if (mixed.amplitude == 0.0 || mixed.filter_ratio != pure.filter_ratio) continue;
      CHECK(mixed.mi.bits_per_symbol < pure.mi.bits_per_symbol);
    }
  }
}

TEST_CASE("loss sweep is flat in loss when dark counts vanish") {
  const SweepContext ctx = test::small_context();
  LossSweepSpec spec;
  spec.dims = {2, 4};
  spec.speed_ratio = 50.0;
  spec.losses = {0.0, 0.5, 0.9};
  const std::vector<LossSweepRow> rows = loss_sweep(ctx, spec);
  REQUIRE(rows.size() == 6);
  for (int d : {2, 4}) {
    double first = -1.0;
    for (const LossSweepRow& row : rows) {
      if (row.d != d) continue;
      if (first < 0.0) {
        first = row.ers;
      } else {
        CHECK(std::abs(row.ers - first) < 1e-12);
      }
    }
  }
}

TEST_CASE("dark counts push heavily attenuated channels toward chance") {
  const SweepContext ctx = test::small_context();
  LossSweepSpec spec;
  spec.dims = {4};
  spec.speed_ratio = 50.0;
  spec.losses = {0.0, 1.0 - 1e-8};
  spec.dark_rate = 100.0;
  spec.gate_window = 100e-9;
  const std::vector<LossSweepRow> rows = loss_sweep(ctx, spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ers < 0.1);
  CHECK(rows[1].ers == doctest::Approx(0.75).epsilon(1e-2));
}

TEST_CASE("sweeps are deterministic across job counts") {
  const SweepContext ctx = test::small_context();
  ErsSweepSpec spec;
  spec.walsh_n = {8};
  spec.speed_ratios = {30.0};
  spec.dims = {2, 3, 4};
  spec.jobs = 1;
  const std::vector<ErsSweepRow> serial = ers_vs_dimension_sweep(Scheme::kPfm, ctx, spec);
  spec.jobs = 4;
  const std::vector<ErsSweepRow> parallel = ers_vs_dimension_sweep(Scheme::kPfm, ctx, spec);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].ers == parallel[i].ers);
    CHECK(serial[i].mean_efficiency == parallel[i].mean_efficiency);
  }
}
