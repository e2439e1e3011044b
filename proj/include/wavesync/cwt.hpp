#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wavesync/timeseries.hpp"

namespace wavesync {

// Morlet wavelet psi(t) = (2a/pi)^{1/4} exp(i w0 t) exp(-a t^2), unit L2 norm.
// a is the envelope decay (1/2 gives the standard exp(-t^2/2) envelope).
struct MorletParams {
    double omega0 = 6.0;
    double envelope_var = 0.5;
};

// Period of the sinusoid whose scale-s power peaks at scale s.
double fourier_factor(const MorletParams& p = {});
double scale_to_period(double s, const MorletParams& p = {});
double period_to_scale(double period, const MorletParams& p = {});

std::complex<double> morlet(double t, const MorletParams& p = {});

// Dyadic scale grid s_k = s0 * 2^(k*dj), k = 0..J,
// J = floor((1/dj) * log2(n*dt/s0)).
struct ScaleGrid {
    double s0 = 0.0;
    double dj = 1.0 / 12.0;
    std::vector<double> scales;

    std::size_t size() const { return scales.size(); }
};

// s0 <= 0 means the default 2*dt. Enforces s0 >= 2*dt and dj <= 1/4.
ScaleGrid make_scale_grid(std::size_t n, double dt, double s0 = 0.0,
                          double dj = 1.0 / 12.0);

// Maximum period free of edge effects at each sample: the wavelet envelope's
// |psi|^2 e-folding distance sqrt(2)*s (at the default envelope) mapped to a
// period. Zero at the ends, peak at the middle.
std::vector<double> cone_of_influence(std::size_t n, double dt,
                                      const MorletParams& p = {});

// Transform values, row-major: row k holds scale k, column i time index i.
struct WaveletField {
    std::string series_name;
    std::int64_t t0 = 0;
    std::int64_t step = 1;
    TimeUnit unit = TimeUnit::index;
    double dt = 1.0;
    std::size_t n = 0;
    MorletParams params;
    ScaleGrid grid;
    std::vector<double> coi;
    std::vector<std::complex<double>> w;

    std::complex<double>& at(std::size_t scale, std::size_t time) {
        return w[scale * n + time];
    }
    std::complex<double> at(std::size_t scale, std::size_t time) const {
        return w[scale * n + time];
    }
    std::size_t num_scales() const { return grid.size(); }
    // True if the cell's period is inside the cone of influence.
    bool inside_coi(std::size_t scale, std::size_t time) const {
        return scale_to_period(grid.scales[scale], params) <= coi[time];
    }
};

// FFT-based transform: the series is zero-padded to a power of two at least
// 2n, and each scale row is the exact circular correlation with the sampled
// scaled wavelet, so it coincides with transform_direct to rounding error.
// An empty grid (default) means make_scale_grid(n, dt).
WaveletField transform(const TimeSeries& x, const ScaleGrid& grid = {},
                       const MorletParams& p = {});

// Literal Riemann-sum evaluation of the transform integral; the independent
// oracle for transform(). Quadratic cost, n capped at 1024.
WaveletField transform_direct(const TimeSeries& x, const ScaleGrid& grid = {},
                              const MorletParams& p = {});

// |W|^2, same layout as WaveletField::w.
std::vector<double> power(const WaveletField& f);

// Inverse transform as a double sum over scales and times. The constant is
// calibrated once per geometry by reconstructing a centered delta and reading
// the median response over interior periods.
TimeSeries reconstruct(const WaveletField& f);

} // namespace wavesync
