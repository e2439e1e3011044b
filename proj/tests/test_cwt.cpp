#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "wavesync/cwt.hpp"
#include "wavesync/errors.hpp"
#include "wavesync/synth.hpp"

using namespace wavesync;

namespace {
constexpr double pi = std::numbers::pi;

double max_abs(const WaveletField& f) {
    double m = 0.0;
    for (const auto& v : f.w) m = std::max(m, std::abs(v));
    return m;
}
} // namespace

TEST_CASE("Fourier factor and period conversions") {
    CHECK(fourier_factor() == doctest::Approx(1.0330436477492537).epsilon(1e-15));
    CHECK(scale_to_period(32.0) == doctest::Approx(33.057396727976117).epsilon(1e-12));
    CHECK(period_to_scale(scale_to_period(7.3)) == doctest::Approx(7.3).epsilon(1e-14));
    // lower center frequency stretches the period of a fixed scale
    const MorletParams low{5.0, 0.5};
    CHECK(fourier_factor(low) > fourier_factor());
    CHECK_THROWS_AS(fourier_factor(MorletParams{4.9, 0.5}), DomainError);
    CHECK_THROWS_AS(fourier_factor(MorletParams{6.0, 0.0}), DomainError);
}

TEST_CASE("Morlet wavelet values") {
    CHECK(morlet(0.0).real() == doctest::Approx(0.75112554446494251).epsilon(1e-15));
    CHECK(morlet(0.0).imag() == 0.0);
    // envelope symmetry and oscillation
    CHECK(std::abs(morlet(1.3)) == doctest::Approx(std::abs(morlet(-1.3))).epsilon(1e-14));
    CHECK(std::abs(morlet(4.0)) < std::abs(morlet(1.0)));
    // unit L2 norm, Riemann sum
    double norm2 = 0.0;
    const double h = 1e-3;
    for (double t = -10.0; t <= 10.0; t += h) norm2 += std::norm(morlet(t)) * h;
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-6));
    // wider envelope parameter: e^{-t^2/4} Gaussian
    const MorletParams wide{6.0, 0.25};
    CHECK(morlet(0.0, wide).real() ==
          doctest::Approx(std::pow(0.5 / pi, 0.25)).epsilon(1e-14));
}

TEST_CASE("dyadic scale grid") {
    const ScaleGrid g = make_scale_grid(512, 1.0);
    CHECK(g.size() == 97);
    CHECK(g.s0 == 2.0);
    CHECK(g.dj == doctest::Approx(1.0 / 12.0));
    CHECK(g.scales.front() == 2.0);
    CHECK(g.scales[1] == doctest::Approx(2.1189261887185906).epsilon(1e-14));
    CHECK(g.scales.back() == doctest::Approx(512.0).epsilon(1e-12));
    for (std::size_t k = 1; k < g.size(); ++k)
        CHECK(g.scales[k] / g.scales[k - 1] ==
              doctest::Approx(std::pow(2.0, 1.0 / 12.0)).epsilon(1e-13));

    CHECK(make_scale_grid(8, 1.0).size() == 25);
    CHECK(make_scale_grid(512, 1.0, 4.0).scales.front() == 4.0);
    CHECK(make_scale_grid(512, 1.0, 0.0, 0.25).size() == 33);

    CHECK_THROWS_AS(make_scale_grid(7, 1.0), TooShort);
    CHECK_THROWS_AS(make_scale_grid(512, 0.0), SamplingError);
    CHECK_THROWS_AS(make_scale_grid(512, 1.0, 1.5), ScaleError);
    CHECK_THROWS_AS(make_scale_grid(512, 1.0, 0.0, 0.3), ScaleError);
    CHECK_THROWS_AS(make_scale_grid(512, 1.0, 0.0, 0.0), ScaleError);
    CHECK_THROWS_AS(make_scale_grid(512, 1.0, 600.0), ScaleError);
}

TEST_CASE("cone of influence is a tent, zero at the edges") {
    const std::size_t n = 512;
    const auto coi = cone_of_influence(n, 1.0);
    REQUIRE(coi.size() == n);
    CHECK(coi[0] == 0.0);
    CHECK(coi[n - 1] == 0.0);
    CHECK(coi[255] == doctest::Approx(186.27040298922205).epsilon(1e-12));
    CHECK(coi[256] == coi[255]); // min(256, 255) == min(255, 256)
    for (std::size_t i = 1; i <= 255; ++i) CHECK(coi[i] > coi[i - 1]);
}

TEST_CASE("FFT transform matches the direct-sum oracle") {
    for (std::size_t n : {64u, 100u}) {
        const TimeSeries x = gen_white_noise(n, 1.0, 123 + n);
        const WaveletField fast = transform(x);
        const WaveletField slow = transform_direct(x);
        REQUIRE(fast.w.size() == slow.w.size());
        const double floor_ = 1e-6 * max_abs(slow);
        double worst = 0.0;
        for (std::size_t k = 0; k < fast.num_scales(); ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (!fast.inside_coi(k, i)) continue;
                const double denom = std::max(std::abs(slow.at(k, i)), floor_);
                worst = std::max(worst, std::abs(fast.at(k, i) - slow.at(k, i)) / denom);
            }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("transform is linear") {
    const std::size_t n = 128;
    const TimeSeries x = gen_white_noise(n, 1.0, 7);
    const TimeSeries y = gen_white_noise(n, 1.0, 8);
    std::vector<double> mixed(n);
    for (std::size_t i = 0; i < n; ++i) mixed[i] = 2.0 * x.values[i] + 3.0 * y.values[i];
    const TimeSeries z = make_series("z", 0, 1, mixed);
    const WaveletField wx = transform(x), wy = transform(y), wz = transform(z);
    const double scale = max_abs(wz);
    for (std::size_t c = 0; c < wz.w.size(); ++c)
        CHECK(std::abs(wz.w[c] - (2.0 * wx.w[c] + 3.0 * wy.w[c])) <= 1e-12 * scale);
}

TEST_CASE("a pure sine peaks at its own period") {
    const std::size_t n = 512;
    const double target = 32.0;
    const WaveletField w = transform(gen_pure_sine(n, target));
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < w.num_scales(); ++k) {
        double avg = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (w.inside_coi(k, i)) {
                avg += std::norm(w.at(k, i));
                ++cnt;
            }
        if (cnt == 0) continue;
        avg /= static_cast<double>(cnt);
        if (avg > best) {
            best = avg;
            best_k = k;
        }
    }
    const double peak_period = scale_to_period(w.grid.scales[best_k]);
    CHECK(std::abs(std::log2(peak_period / target)) <= 1.0 / 12.0 + 1e-9);
}

TEST_CASE("transform propagates series metadata and errors") {
    const TimeSeries x = gen_white_noise(64, 1.0, 3);
    const WaveletField w = transform(x);
    CHECK(w.series_name == "noise");
    CHECK(w.n == 64);
    CHECK(w.dt == 1.0);
    CHECK(w.coi.size() == 64);
    CHECK(w.w.size() == w.num_scales() * 64);

    CHECK_THROWS_AS(transform(x, {}, MorletParams{4.0, 0.5}), DomainError);
    const TimeSeries big = gen_white_noise(2048, 1.0, 3);
    CHECK_THROWS_AS(transform_direct(big), SizeError);
}

TEST_CASE("reconstruction returns the signal within the stated budget") {
    const std::size_t n = 512;
    SUBCASE("single sine, middle half") {
        const TimeSeries x = gen_pure_sine(n, 32.0);
        const TimeSeries r = reconstruct(transform(x));
        REQUIRE(r.size() == n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
            num += (r.values[i] - x.values[i]) * (r.values[i] - x.values[i]);
            den += x.values[i] * x.values[i];
        }
        CHECK(std::sqrt(num / den) < 0.05);
        CHECK(std::sqrt(num / den) < 0.02); // margin observed in development
    }
    SUBCASE("two-band mixture") {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = std::sin(2.0 * pi * static_cast<double>(i) / 16.0) +
                   0.5 * std::sin(2.0 * pi * static_cast<double>(i) / 64.0);
        const TimeSeries x = make_series("mix", 0, 1, v);
        const TimeSeries r = reconstruct(transform(x));
        double num = 0.0, den = 0.0;
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
            num += (r.values[i] - x.values[i]) * (r.values[i] - x.values[i]);
            den += x.values[i] * x.values[i];
        }
        CHECK(std::sqrt(num / den) < 0.05);
    }
    SUBCASE("zero series reconstructs to zero") {
        const TimeSeries x = make_series("z", 0, 1, std::vector<double>(64, 0.0));
        const TimeSeries r = reconstruct(transform(x));
        for (double v : r.values) CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("power is the squared modulus") {
    const WaveletField w = transform(gen_white_noise(64, 1.0, 9));
    const auto p = power(w);
    REQUIRE(p.size() == w.w.size());
    for (std::size_t c = 0; c < p.size(); ++c)
        CHECK(p[c] == doctest::Approx(std::norm(w.w[c])).epsilon(1e-15));
}
