#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wavesync/timeseries.hpp"

namespace wavesync {

// Piecewise lag schedule entry: b_t = u_{t-lag} for t in [from, to].
struct LagSegment {
    std::size_t from = 0, to = 0;
    std::size_t lag = 0;
};

// Two noisy sines on t = 1..n (radians, unit step):
//   x_t = sin(t) + eps
//   y_t = sin(t)/100          on [1,100]
//         sin(t)              on [101,350]
//         sin(t-0.01)/1000    on [351,605]
//         sin(t+pi/2)         on [606,900]
//         sin(t)/100          on [901,1000]
// with independent Gaussian noise of std noise_std on each series.
std::pair<TimeSeries, TimeSeries> gen_segmented_sines(std::size_t n = 1000,
                                                      double noise_std = 0.1,
                                                      std::uint64_t seed = 0);

// a_t = u_t against b_t = u_{t-lag(t)} for one white-noise stream u.
// Default schedule: lag 1 on [0,200], 4 on [201,350], 8 on [351,511].
std::pair<TimeSeries, TimeSeries> gen_lagged_noise(
    std::size_t n = 512, std::uint64_t seed = 0,
    const std::vector<LagSegment>& segments = {{0, 200, 1}, {201, 350, 4}, {351, 511, 8}});

// White noise against its running sum (b_0 = u_0).
std::pair<TimeSeries, TimeSeries> gen_random_walk_pair(std::size_t n = 512,
                                                       std::uint64_t seed = 0);

TimeSeries gen_pure_sine(std::size_t n, double period, double phase = 0.0,
                         double amplitude = 1.0);

TimeSeries gen_white_noise(std::size_t n, double sigma, std::uint64_t seed);

TimeSeries gen_ar1(std::size_t n, double alpha, double sigma, std::uint64_t seed,
                   double mean = 0.0);

// CLI-facing description of a synthetic dataset.
struct SynthSpec {
    enum class Kind { segmented_sines, lagged_noise, random_walk_pair, pure_sine,
                      white_noise, ar1 };
    Kind kind = Kind::segmented_sines;
    std::size_t n = 0;        // 0 = generator default
    std::uint64_t seed = 0;
    double noise_std = 0.1;   // segmented_sines
    double period = 32.0;     // pure_sine
    double phase = 0.0;       // pure_sine
    double sigma = 1.0;       // white_noise / ar1
    double alpha = 0.5;       // ar1
};

SynthSpec::Kind synth_kind_from_name(const std::string& s);
std::string synth_kind_name(SynthSpec::Kind k);

std::vector<TimeSeries> generate(const SynthSpec& spec);

} // namespace wavesync
