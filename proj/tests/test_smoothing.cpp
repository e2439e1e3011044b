#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wavesync/errors.hpp"
#include "wavesync/smoothing.hpp"

using namespace wavesync;

namespace {

std::vector<double> noise_matrix(std::size_t cells, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> m(cells);
    for (double& v : m) v = g(gen);
    return m;
}

double variance(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("a constant field is a fixed point") {
    const std::size_t n = 128;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    std::vector<double> m(grid.size() * n, 3.7);
    smooth(m, grid, n, 1.0);
    for (double v : m) CHECK(v == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("time smoothing conserves each row's mass") {
    const std::size_t n = 128;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    std::vector<double> m(grid.size() * n, 0.0);
    // one unit of mass in every row, off center
    for (std::size_t k = 0; k < grid.size(); ++k) m[k * n + 17] = 1.0;
    SmoothingSpec spec;
    spec.scale_octaves = 0.0; // isolate the time direction
    smooth(m, grid, n, 1.0, spec);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double sum = 0.0, mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += m[k * n + i];
            mx = std::max(mx, m[k * n + i]);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(mx < 1.0); // actually spread out
    }
}

TEST_CASE("zero widths are the identity") {
    const std::size_t n = 64;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    const std::vector<double> orig = noise_matrix(grid.size() * n, 21);
    std::vector<double> m = orig;
    smooth(m, grid, n, 1.0, SmoothingSpec{0.0, 0.0});
    CHECK(m == orig);
}

TEST_CASE("sub-step boxcar widths leave the scale direction alone") {
    const std::size_t n = 64;
    const ScaleGrid grid = make_scale_grid(n, 1.0); // dj = 1/12
    const std::vector<double> orig = noise_matrix(grid.size() * n, 22);

    std::vector<double> a = orig, b = orig;
    smooth(a, grid, n, 1.0, SmoothingSpec{1.0, 0.0});
    // w = octaves/dj = 0.9 <= 1: no cross-scale mixing
    smooth(b, grid, n, 1.0, SmoothingSpec{1.0, 0.075});
    CHECK(a == b);
}

TEST_CASE("smoothing shrinks noise variance strongly") {
    const std::size_t n = 256;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    std::vector<double> m = noise_matrix(grid.size() * n, 23);
    const double before = variance(m);
    smooth(m, grid, n, 1.0);
    CHECK(variance(m) < 0.5 * before);
}

TEST_CASE("complex and real paths agree") {
    const std::size_t n = 64;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    const std::vector<double> orig = noise_matrix(grid.size() * n, 24);
    std::vector<double> re = orig;
    std::vector<std::complex<double>> cx(orig.size());
    for (std::size_t c = 0; c < orig.size(); ++c) cx[c] = {orig[c], -2.0 * orig[c]};
    smooth(re, grid, n, 1.0);
    smooth(cx, grid, n, 1.0);
    for (std::size_t c = 0; c < orig.size(); ++c) {
        CHECK(cx[c].real() == doctest::Approx(re[c]).epsilon(1e-12));
        CHECK(cx[c].imag() == doctest::Approx(-2.0 * re[c]).epsilon(1e-12));
    }
}

TEST_CASE("boxcar much wider than the grid turns every column into its mean") {
    // 37 scales; w = 7/(1/12) = 84 grid steps reaches every row from any row,
    // so truncation + renormalization leaves the plain mean over scales
    const std::size_t n = 16;
    const ScaleGrid grid = make_scale_grid(n, 1.0);
    REQUIRE(grid.size() == 37);
    std::vector<double> m(grid.size() * n);
    for (std::size_t k = 0; k < grid.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) m[k * n + i] = static_cast<double>(k);
    smooth(m, grid, n, 1.0, SmoothingSpec{0.0, 7.0});
    for (std::size_t k = 0; k < grid.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            CHECK(m[k * n + i] == doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("size and spec validation") {
    const ScaleGrid grid = make_scale_grid(64, 1.0);
    std::vector<double> wrong(grid.size() * 64 + 1, 0.0);
    CHECK_THROWS_AS(smooth(wrong, grid, 64, 1.0), SizeError);
    std::vector<double> ok(grid.size() * 64, 0.0);
    CHECK_THROWS_AS(smooth(ok, grid, 64, 1.0, SmoothingSpec{-1.0, 0.6}), ConfigError);
    CHECK_THROWS_AS(smooth(ok, grid, 64, 1.0, SmoothingSpec{1.0, -0.6}), ConfigError);
}
