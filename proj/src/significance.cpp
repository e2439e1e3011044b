#include "wavesync/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "wavesync/errors.hpp"
#include "wavesync/parallel.hpp"
#include "wavesync/smoothing.hpp"

namespace wavesync {
namespace {

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();
constexpr double pi = std::numbers::pi;

void check_mc_spec(std::size_t draws, double level, std::size_t bins) {
    if (draws == 0) throw ConfigError("Monte Carlo draw count must be positive");
    if (!(level > 0.0 && level < 1.0))
        throw ConfigError("significance level must lie strictly between 0 and 1");
    if (bins < 2) throw ConfigError("histogram needs at least two bins");
}

// Periods per scale, precomputed so the per-cell COI test is a lookup.
std::vector<double> grid_periods(const ScaleGrid& g, const MorletParams& p) {
    std::vector<double> per(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        per[k] = scale_to_period(g.scales[k], p);
    return per;
}

double wrap_pi(double x) {
    // to [-pi, pi)
    double y = std::remainder(x, 2.0 * pi); // (-pi, pi]
    if (y == pi) y = -pi;
    return y;
}

} // namespace

Ar1Model fit_ar1(const TimeSeries& x) {
    const auto& v = x.values;
    const std::size_t n = v.size();
    Ar1Model m;
    m.mean = mean(v);
    double den = 0.0, num = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = v[t] - m.mean;
        den += d * d;
        if (t + 1 < n) num += d * (v[t + 1] - m.mean);
    }
    if (!(den > 0.0))
        throw DegenerateError("cannot fit an AR(1) model to a constant series");
    m.alpha = num / den;
    double rss = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double e = (v[t] - m.mean) - m.alpha * (v[t - 1] - m.mean);
        rss += e * e;
    }
    m.sigma = std::sqrt(rss / static_cast<double>(n - 1));
    return m;
}

std::vector<double> ar1_surrogate(const Ar1Model& m, std::size_t n,
                                  std::uint64_t seed) {
    if (!(std::abs(m.alpha) < 1.0))
        throw DomainError("AR(1) surrogates require |alpha| < 1");
    if (!(m.sigma >= 0.0))
        throw DomainError("AR(1) innovation scale must be nonnegative");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    if (n == 0) return x;
    x[0] = m.mean + gauss(gen) * m.sigma / std::sqrt(1.0 - m.alpha * m.alpha);
    for (std::size_t t = 1; t < n; ++t)
        x[t] = m.mean + m.alpha * (x[t - 1] - m.mean) + m.sigma * gauss(gen);
    return x;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 step applied to master + (index+1) increments: one
    // statistically independent stream per counter value.
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SignificanceResult coherence_significance(const TimeSeries& xi, const TimeSeries& xj,
                                          const ScaleGrid& grid, const MorletParams& mp,
                                          const SmoothingSpec& sp,
                                          const SignificanceSpec& spec) {
    check_mc_spec(spec.draws, spec.level, spec.bins);
    const ScaleGrid g =
        grid.scales.empty() ? make_scale_grid(xi.size(), xi.dt()) : grid;

    SignificanceResult res;
    res.observed = squared_coherence(transform(xi, g, mp), transform(xj, g, mp), sp);
    res.draws = spec.draws;
    res.seed = spec.seed;
    res.level = spec.level;

    const std::size_t ns = g.size(), n = xi.size(), bins = spec.bins;
    const std::vector<double> periods = grid_periods(g, mp);
    const std::vector<double>& coi = res.observed.coi;
    const Ar1Model mi = fit_ar1(xi), mj = fit_ar1(xj);

    // Null coherence values pool into per-scale integer histograms. Each draw
    // contributes the same counts whichever thread runs it (per-draw seeds are
    // counter-derived), and the merge is exact integer addition, so thread
    // count cannot change the thresholds.
    const std::size_t tasks = std::min<std::size_t>(thread_count(), spec.draws);
    std::vector<std::vector<std::uint32_t>> local(
        tasks, std::vector<std::uint32_t>(ns * bins, 0));
    parallel_for(0, tasks, [&](std::size_t t) {
        auto& h = local[t];
        const std::size_t lo = t * spec.draws / tasks;
        const std::size_t hi = (t + 1) * spec.draws / tasks;
        for (std::size_t d = lo; d < hi; ++d) {
            TimeSeries si = xi, sj = xj;
            si.values = ar1_surrogate(mi, n, split_seed(spec.seed, 2 * d));
            sj.values = ar1_surrogate(mj, n, split_seed(spec.seed, 2 * d + 1));
            const ScalarField r2 =
                squared_coherence(transform(si, g, mp), transform(sj, g, mp), sp);
            for (std::size_t k = 0; k < ns; ++k) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(periods[k] <= coi[i])) continue;
                    const double v = r2.values[k * n + i];
                    if (std::isnan(v)) continue;
                    const std::size_t b = std::min(
                        bins - 1, static_cast<std::size_t>(v * static_cast<double>(bins)));
                    ++h[k * bins + b];
                }
            }
        }
    });
    std::vector<std::uint64_t> hist(ns * bins, 0);
    for (const auto& h : local)
        for (std::size_t c = 0; c < hist.size(); ++c) hist[c] += h[c];

    // Threshold: upper edge of the first bin at which the pooled cumulative
    // count reaches the requested level. Scales with no COI-interior cells
    // have no null sample and stay NaN (nothing can exceed them).
    res.threshold.assign(ns, nan_cell);
    for (std::size_t k = 0; k < ns; ++k) {
        std::uint64_t total = 0;
        for (std::size_t b = 0; b < bins; ++b) total += hist[k * bins + b];
        if (total == 0) continue;
        const double target = spec.level * static_cast<double>(total);
        std::uint64_t cum = 0;
        for (std::size_t b = 0; b < bins; ++b) {
            cum += hist[k * bins + b];
            if (static_cast<double>(cum) >= target) {
                res.threshold[k] =
                    static_cast<double>(b + 1) / static_cast<double>(bins);
                break;
            }
        }
    }

    res.mask.assign(ns * n, 0);
    for (std::size_t k = 0; k < ns; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (res.observed.values[k * n + i] > res.threshold[k])
                res.mask[k * n + i] = 1;
    return res;
}

PhaseCi phase_bootstrap(const TimeSeries& xi, const TimeSeries& xj,
                        const ScaleGrid& grid, const MorletParams& mp,
                        const SmoothingSpec& sp, const BootstrapSpec& spec) {
    check_mc_spec(spec.draws, spec.level, spec.bins);
    if (!(spec.noise_fraction > 0.0))
        throw ConfigError("bootstrap noise fraction must be positive");
    const ScaleGrid g =
        grid.scales.empty() ? make_scale_grid(xi.size(), xi.dt()) : grid;

    PhaseCi res;
    res.phase = phase_difference(transform(xi, g, mp), transform(xj, g, mp), sp);
    res.draws = spec.draws;
    res.seed = spec.seed;
    res.level = spec.level;

    const std::size_t ns = g.size(), n = xi.size(), bins = spec.bins;
    const double si_noise = spec.noise_fraction * sample_std(xi.values);
    const double sj_noise = spec.noise_fraction * sample_std(xj.values);

    // Per-cell histograms of the replicate phase's deviation from the point
    // estimate, wrapped to [-pi, pi). uint16 suffices: one count per draw.
    const std::size_t tasks = std::min<std::size_t>(thread_count(), spec.draws);
    std::vector<std::vector<std::uint16_t>> local(
        tasks, std::vector<std::uint16_t>(ns * n * bins, 0));
    parallel_for(0, tasks, [&](std::size_t t) {
        auto& h = local[t];
        const std::size_t lo = t * spec.draws / tasks;
        const std::size_t hi = (t + 1) * spec.draws / tasks;
        for (std::size_t d = lo; d < hi; ++d) {
            std::mt19937_64 gen(split_seed(spec.seed, d));
            std::normal_distribution<double> gauss(0.0, 1.0);
            TimeSeries ri = xi, rj = xj;
            for (double& v : ri.values) v += si_noise * gauss(gen);
            for (double& v : rj.values) v += sj_noise * gauss(gen);
            const ScalarField rep =
                phase_difference(transform(ri, g, mp), transform(rj, g, mp), sp);
            for (std::size_t c = 0; c < ns * n; ++c) {
                const double dev = wrap_pi(rep.values[c] - res.phase.values[c]);
                if (std::isnan(dev)) continue;
                const std::size_t b = std::min(
                    bins - 1, static_cast<std::size_t>((dev + pi) / (2.0 * pi) *
                                                       static_cast<double>(bins)));
                ++h[c * bins + b];
            }
        }
    });
    std::vector<std::uint32_t> hist(ns * n * bins, 0);
    for (const auto& h : local)
        for (std::size_t c = 0; c < hist.size(); ++c) hist[c] += h[c];

    // Interval: outer edges of the bins holding the lower and upper tail
    // quantiles, added to the point estimate. Deliberately conservative (bin
    // granularity widens, never narrows) and not re-wrapped, so bounds can
    // leave [-pi, pi] while always bracketing the estimate.
    res.lo.assign(ns * n, nan_cell);
    res.hi.assign(ns * n, nan_cell);
    const double tail = (1.0 - spec.level) / 2.0;
    for (std::size_t c = 0; c < ns * n; ++c) {
        if (std::isnan(res.phase.values[c])) continue;
        std::uint64_t total = 0;
        for (std::size_t b = 0; b < bins; ++b) total += hist[c * bins + b];
        if (total == 0) continue;
        const double lo_target = tail * static_cast<double>(total);
        const double hi_target = (1.0 - tail) * static_cast<double>(total);
        std::uint64_t cum = 0;
        std::size_t b_lo = 0, b_hi = bins - 1;
        bool lo_found = false;
        for (std::size_t b = 0; b < bins; ++b) {
            cum += hist[c * bins + b];
            if (!lo_found && static_cast<double>(cum) >= lo_target) {
                b_lo = b;
                lo_found = true;
            }
            if (static_cast<double>(cum) >= hi_target) {
                b_hi = b;
                break;
            }
        }
        const double width = 2.0 * pi / static_cast<double>(bins);
        res.lo[c] = res.phase.values[c] + (-pi + static_cast<double>(b_lo) * width);
        res.hi[c] = res.phase.values[c] + (-pi + static_cast<double>(b_hi + 1) * width);
    }
    return res;
}

} // namespace wavesync
