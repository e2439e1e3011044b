#include "wavesync/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wavesync/errors.hpp"
#include "wavesync/significance.hpp"

namespace wavesync {
namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> gauss_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = gauss(gen);
    return v;
}

} // namespace

std::pair<TimeSeries, TimeSeries> gen_segmented_sines(std::size_t n, double noise_std,
                                                      std::uint64_t seed) {
    if (!(noise_std >= 0.0)) throw ConfigError("noise std must be nonnegative");
    // Independent noise streams so the seed interface stays counter-based.
    const std::vector<double> e1 =
        noise_std > 0.0 ? gauss_draws(n, split_seed(seed, 0)) : std::vector<double>(n, 0.0);
    const std::vector<double> e2 =
        noise_std > 0.0 ? gauss_draws(n, split_seed(seed, 1)) : std::vector<double>(n, 0.0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i + 1); // radians, unit step
        x[i] = std::sin(t) + noise_std * e1[i];
        double v;
        if (t <= 100.0) v = std::sin(t) / 100.0;
        else if (t <= 350.0) v = std::sin(t);
        else if (t <= 605.0) v = std::sin(t - 0.01) / 1000.0;
        else if (t <= 900.0) v = std::sin(t + pi / 2.0);
        else v = std::sin(t) / 100.0;
        y[i] = v + noise_std * e2[i];
    }
    return {make_series("x", 1, 1, std::move(x)), make_series("y", 1, 1, std::move(y))};
}

std::pair<TimeSeries, TimeSeries> gen_lagged_noise(std::size_t n, std::uint64_t seed,
                                                   const std::vector<LagSegment>& segments) {
    if (segments.empty()) throw ConfigError("lag schedule must not be empty");
    std::size_t expect = 0, maxlag = 0;
    for (const auto& s : segments) {
        if (s.from != expect || s.to < s.from)
            throw ConfigError("lag segments must tile [0, n-1] in order");
        expect = s.to + 1;
        maxlag = std::max(maxlag, s.lag);
    }
    if (expect != n) throw ConfigError("lag segments must tile [0, n-1] in order");
    // One noise stream with maxlag pre-samples, so every b_t = u_{t-lag}
    // exists even at t = 0.
    const std::vector<double> u = gauss_draws(n + maxlag, seed);
    std::vector<double> a(n), b(n);
    for (std::size_t t = 0; t < n; ++t) a[t] = u[t + maxlag];
    for (const auto& s : segments)
        for (std::size_t t = s.from; t <= s.to; ++t) b[t] = u[t + maxlag - s.lag];
    return {make_series("a", 0, 1, std::move(a)), make_series("b", 0, 1, std::move(b))};
}

std::pair<TimeSeries, TimeSeries> gen_random_walk_pair(std::size_t n,
                                                       std::uint64_t seed) {
    std::vector<double> a = gauss_draws(n, seed);
    std::vector<double> b(n);
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sum += a[t];
        b[t] = sum;
    }
    return {make_series("a", 0, 1, std::move(a)), make_series("b", 0, 1, std::move(b))};
}

TimeSeries gen_pure_sine(std::size_t n, double period, double phase,
                         double amplitude) {
    if (!(period > 0.0)) throw ConfigError("sine period must be positive");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amplitude * std::sin(2.0 * pi * static_cast<double>(i) / period + phase);
    return make_series("sine", 0, 1, std::move(v));
}

TimeSeries gen_white_noise(std::size_t n, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw ConfigError("noise std must be nonnegative");
    std::vector<double> v = gauss_draws(n, seed);
    for (double& x : v) x *= sigma;
    return make_series("noise", 0, 1, std::move(v));
}

TimeSeries gen_ar1(std::size_t n, double alpha, double sigma, std::uint64_t seed,
                   double mean) {
    if (!(std::abs(alpha) < 1.0)) throw ConfigError("AR(1) alpha must satisfy |alpha| < 1");
    if (!(sigma >= 0.0)) throw ConfigError("AR(1) sigma must be nonnegative");
    return make_series("ar1", 0, 1,
                       ar1_surrogate(Ar1Model{mean, alpha, sigma}, n, seed));
}

SynthSpec::Kind synth_kind_from_name(const std::string& s) {
    if (s == "segmented_sines") return SynthSpec::Kind::segmented_sines;
    if (s == "lagged_noise") return SynthSpec::Kind::lagged_noise;
    if (s == "random_walk_pair") return SynthSpec::Kind::random_walk_pair;
    if (s == "pure_sine") return SynthSpec::Kind::pure_sine;
    if (s == "white_noise") return SynthSpec::Kind::white_noise;
    if (s == "ar1") return SynthSpec::Kind::ar1;
    throw ConfigError("unknown synthetic dataset '" + s + "'");
}

std::string synth_kind_name(SynthSpec::Kind k) {
    switch (k) {
        case SynthSpec::Kind::segmented_sines: return "segmented_sines";
        case SynthSpec::Kind::lagged_noise: return "lagged_noise";
        case SynthSpec::Kind::random_walk_pair: return "random_walk_pair";
        case SynthSpec::Kind::pure_sine: return "pure_sine";
        case SynthSpec::Kind::white_noise: return "white_noise";
        default: return "ar1";
    }
}

std::vector<TimeSeries> generate(const SynthSpec& spec) {
    switch (spec.kind) {
        case SynthSpec::Kind::segmented_sines: {
            auto [x, y] = gen_segmented_sines(spec.n ? spec.n : 1000, spec.noise_std,
                                              spec.seed);
            return {std::move(x), std::move(y)};
        }
        case SynthSpec::Kind::lagged_noise: {
            auto [a, b] = gen_lagged_noise(spec.n ? spec.n : 512, spec.seed);
            return {std::move(a), std::move(b)};
        }
        case SynthSpec::Kind::random_walk_pair: {
            auto [a, b] = gen_random_walk_pair(spec.n ? spec.n : 512, spec.seed);
            return {std::move(a), std::move(b)};
        }
        case SynthSpec::Kind::pure_sine:
            return {gen_pure_sine(spec.n ? spec.n : 512, spec.period, spec.phase)};
        case SynthSpec::Kind::white_noise:
            return {gen_white_noise(spec.n ? spec.n : 512, spec.sigma, spec.seed)};
        default:
            return {gen_ar1(spec.n ? spec.n : 512, spec.alpha, spec.sigma, spec.seed)};
    }
}

} // namespace wavesync
