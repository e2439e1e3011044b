#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavesync/comovement.hpp"
#include "wavesync/timeseries.hpp"

namespace wavesync {

// Gaussian AR(1): x_t = mean + alpha (x_{t-1} - mean) + sigma eps_t.
struct Ar1Model {
    double mean = 0.0;
    double alpha = 0.0;
    double sigma = 1.0;
};

// alpha from the lag-1 sample autocorrelation, sigma from the residual
// variance. DegenerateError on (near-)zero variance.
Ar1Model fit_ar1(const TimeSeries& x);

// Stationary-initialized draw (requires |alpha| < 1). Deterministic in seed.
std::vector<double> ar1_surrogate(const Ar1Model& m, std::size_t n,
                                  std::uint64_t seed);

// Counter-based seed split: an independent stream per draw index, so parallel
// draw order cannot affect results.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

struct SignificanceSpec {
    std::size_t draws = 1000;
    std::uint64_t seed = 0;
    double level = 0.95;
    // Null values are pooled into fixed histograms (exact integer merges keep
    // the result independent of thread count); 4096 bins over [0,1] bounds the
    // threshold quantization by 2.5e-4.
    std::size_t bins = 4096;
};

struct SignificanceResult {
    std::vector<double> threshold;   // per scale, level-quantile of the null
    std::vector<std::uint8_t> mask;  // row-major, 1 where observed > threshold
    ScalarField observed;            // the observed coherence field
    std::size_t draws = 0;
    std::uint64_t seed = 0;
    double level = 0.95;
};

// Monte Carlo red-noise test: AR(1) models fitted to both series, independent
// surrogate pairs, coherence pooled per scale over COI-interior cells.
SignificanceResult coherence_significance(const TimeSeries& xi, const TimeSeries& xj,
                                          const ScaleGrid& grid, const MorletParams& mp,
                                          const SmoothingSpec& sp,
                                          const SignificanceSpec& spec);

struct BootstrapSpec {
    std::size_t draws = 1000;
    std::uint64_t seed = 0;
    double level = 0.95;
    // Replication noise std as a fraction of each series' sample std.
    double noise_fraction = 0.05;
    std::size_t bins = 256; // per-cell deviation histogram over [-pi, pi)
};

struct PhaseCi {
    ScalarField phase; // point estimate
    std::vector<double> lo, hi; // row-major CI bounds around the estimate
    std::size_t draws = 0;
    std::uint64_t seed = 0;
    double level = 0.95;
};

// Noise-perturbation bootstrap for the phase difference. Deviations from the
// point estimate are wrapped to [-pi, pi) and quantiled per cell, so the
// interval is centered on the estimate and immune to the +-pi seam; bounds may
// therefore leave [-pi, pi].
PhaseCi phase_bootstrap(const TimeSeries& xi, const TimeSeries& xj,
                        const ScaleGrid& grid, const MorletParams& mp,
                        const SmoothingSpec& sp, const BootstrapSpec& spec);

} // namespace wavesync
