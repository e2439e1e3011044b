#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "wavesync/errors.hpp"
#include "wavesync/synth.hpp"

using namespace wavesync;

namespace {
constexpr double pi = std::numbers::pi;

double segment_formula(double t) {
    if (t <= 100.0) return std::sin(t) / 100.0;
    if (t <= 350.0) return std::sin(t);
    if (t <= 605.0) return std::sin(t - 0.01) / 1000.0;
    if (t <= 900.0) return std::sin(t + pi / 2.0);
    return std::sin(t) / 100.0;
}
} // namespace

TEST_CASE("segmented sines follow the piecewise schedule exactly") {
    const auto [x, y] = gen_segmented_sines(1000, 0.0, 0);
    REQUIRE(x.size() == 1000);
    REQUIRE(y.size() == 1000);
    CHECK(x.name == "x");
    CHECK(y.name == "y");
    CHECK(x.t0 == 1); // t is measured in radians starting at 1
    CHECK(y.t0 == 1);

    for (std::size_t i = 0; i < 1000; ++i) {
        const double t = static_cast<double>(i + 1);
        REQUIRE(x.values[i] == std::sin(t));
        REQUIRE(y.values[i] == segment_formula(t));
    }
    // boundary samples, both sides of every switch point
    for (double t : {100.0, 101.0, 350.0, 351.0, 605.0, 606.0, 900.0, 901.0}) {
        const std::size_t i = static_cast<std::size_t>(t) - 1;
        CHECK(y.values[i] == segment_formula(t));
    }

    const auto [xs, ys] = gen_segmented_sines(150, 0.0, 0);
    CHECK(xs.size() == 150);
    CHECK(ys.values[120] == std::sin(121.0)); // second segment reached

    CHECK_THROWS_AS(gen_segmented_sines(1000, -0.1, 0), ConfigError);
}

TEST_CASE("segmented sines are deterministic in the seed") {
    const auto [x1, y1] = gen_segmented_sines(1000, 0.1, 7);
    const auto [x2, y2] = gen_segmented_sines(1000, 0.1, 7);
    CHECK(x1.values == x2.values);
    CHECK(y1.values == y2.values);
    const auto [x3, y3] = gen_segmented_sines(1000, 0.1, 8);
    CHECK(x1.values != x3.values);
    CHECK(y1.values != y3.values);
    // the two series carry independent noise
    bool same = true;
    for (std::size_t i = 0; i < 1000; ++i) {
        const double t = static_cast<double>(i + 1);
        if (x1.values[i] - std::sin(t) != y1.values[i] - segment_formula(t)) same = false;
    }
    CHECK_FALSE(same);
}

TEST_CASE("lagged noise reproduces the stream at the scheduled lag") {
    const auto [a, b] = gen_lagged_noise(512, 3);
    REQUIRE(a.size() == 512);
    CHECK(a.name == "a");
    CHECK(b.name == "b");
    const std::vector<LagSegment> sched = {{0, 200, 1}, {201, 350, 4}, {351, 511, 8}};
    for (const auto& s : sched)
        for (std::size_t t = std::max(s.from, s.lag); t <= s.to; ++t)
            REQUIRE(b.values[t] == a.values[t - s.lag]);
    // switch points land in the right segment
    CHECK(b.values[200] == a.values[199]);
    CHECK(b.values[201] == a.values[197]);
    CHECK(b.values[350] == a.values[346]);
    CHECK(b.values[351] == a.values[343]);
    CHECK(b.values[511] == a.values[503]);

    const auto [a2, b2] = gen_lagged_noise(512, 3);
    CHECK(a.values == a2.values);
    CHECK(b.values == b2.values);
}

TEST_CASE("lag schedules must tile the sample range") {
    using V = std::vector<LagSegment>;
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{}), ConfigError);
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{{5, 511, 1}}), ConfigError);
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{{0, 100, 1}, {102, 511, 2}}), ConfigError);
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{{0, 200, 1}, {200, 511, 2}}), ConfigError);
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{{0, 100, 1}}), ConfigError);
    CHECK_THROWS_AS(gen_lagged_noise(512, 0, V{{0, 200, 1}, {201, 150, 2}}), ConfigError);
    // custom tiling that is valid
    const auto [a, b] = gen_lagged_noise(64, 1, V{{0, 31, 2}, {32, 63, 5}});
    for (std::size_t t = 2; t <= 31; ++t) REQUIRE(b.values[t] == a.values[t - 2]);
    for (std::size_t t = 32; t <= 63; ++t) REQUIRE(b.values[t] == a.values[t - 5]);
}

TEST_CASE("random walk pair integrates the noise") {
    const auto [a, b] = gen_random_walk_pair(512, 5);
    REQUIRE(a.size() == 512);
    CHECK(b.values[0] == a.values[0]);
    for (std::size_t t = 1; t < 512; ++t)
        REQUIRE(std::abs((b.values[t] - b.values[t - 1]) - a.values[t]) <= 1e-12);
    const auto [a2, b2] = gen_random_walk_pair(512, 5);
    CHECK(b.values == b2.values);
}

TEST_CASE("pure sine evaluates the stated formula") {
    const TimeSeries s = gen_pure_sine(256, 32.0, 0.7, 3.0);
    CHECK(s.name == "sine");
    for (std::size_t i = 0; i < 256; ++i)
        REQUIRE(s.values[i] ==
                3.0 * std::sin(2.0 * pi * static_cast<double>(i) / 32.0 + 0.7));
    const TimeSeries d = gen_pure_sine(64, 16.0);
    CHECK(d.values[0] == 0.0);
    CHECK(d.values[4] == doctest::Approx(1.0));
    CHECK_THROWS_AS(gen_pure_sine(64, 0.0), ConfigError);
    CHECK_THROWS_AS(gen_pure_sine(64, -3.0), ConfigError);
}

TEST_CASE("white noise scales linearly with sigma") {
    const TimeSeries unit = gen_white_noise(512, 1.0, 42);
    const TimeSeries wide = gen_white_noise(512, 2.5, 42);
    CHECK(unit.name == "noise");
    for (std::size_t i = 0; i < 512; ++i)
        REQUIRE(wide.values[i] == 2.5 * unit.values[i]);
    CHECK(gen_white_noise(512, 1.0, 42).values == unit.values);
    CHECK(gen_white_noise(512, 1.0, 43).values != unit.values);
    CHECK_THROWS_AS(gen_white_noise(512, -1.0, 0), ConfigError);
}

TEST_CASE("ar1 generator is deterministic and validated") {
    const TimeSeries a = gen_ar1(512, 0.6, 1.0, 9);
    CHECK(a.name == "ar1");
    CHECK(gen_ar1(512, 0.6, 1.0, 9).values == a.values);
    CHECK(gen_ar1(512, 0.6, 1.0, 10).values != a.values);
    const TimeSeries shifted = gen_ar1(4096, 0.2, 0.5, 9, 100.0);
    double m = 0.0;
    for (double v : shifted.values) m += v;
    m /= static_cast<double>(shifted.size());
    CHECK(m == doctest::Approx(100.0).epsilon(0.001));
    CHECK_THROWS_AS(gen_ar1(512, 1.0, 1.0, 0), ConfigError);
    CHECK_THROWS_AS(gen_ar1(512, -1.5, 1.0, 0), ConfigError);
    CHECK_THROWS_AS(gen_ar1(512, 0.5, -1.0, 0), ConfigError);
}

TEST_CASE("dataset names round-trip and dispatch") {
    using K = SynthSpec::Kind;
    for (K k : {K::segmented_sines, K::lagged_noise, K::random_walk_pair,
                K::pure_sine, K::white_noise, K::ar1})
        CHECK(synth_kind_from_name(synth_kind_name(k)) == k);
    CHECK_THROWS_AS(synth_kind_from_name("brownian"), ConfigError);

    SynthSpec spec;
    spec.kind = K::segmented_sines;
    auto out = generate(spec);
    REQUIRE(out.size() == 2);
    CHECK(out[0].size() == 1000); // generator default length
    CHECK(out[0].name == "x");

    spec.kind = K::lagged_noise;
    out = generate(spec);
    REQUIRE(out.size() == 2);
    CHECK(out[0].size() == 512);
    CHECK(out[1].name == "b");

    spec.kind = K::pure_sine;
    spec.n = 128;
    spec.period = 16.0;
    spec.phase = 0.25;
    out = generate(spec);
    REQUIRE(out.size() == 1);
    CHECK(out[0].size() == 128);
    CHECK(out[0].values == gen_pure_sine(128, 16.0, 0.25).values);

    spec.kind = K::white_noise;
    spec.sigma = 2.0;
    spec.seed = 4;
    out = generate(spec);
    REQUIRE(out.size() == 1);
    CHECK(out[0].values == gen_white_noise(128, 2.0, 4).values);

    spec.kind = K::ar1;
    spec.alpha = 0.3;
    out = generate(spec);
    REQUIRE(out.size() == 1);
    CHECK(out[0].values == gen_ar1(128, 0.3, 2.0, 4).values);
}
