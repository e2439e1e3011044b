#include "wavesync/cohesion.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "wavesync/errors.hpp"

namespace wavesync {
namespace {

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();

struct PairSet {
    std::vector<ScalarField> rho; // unordered pairs, i<j, lexicographic
    std::vector<std::pair<std::size_t, std::size_t>> index;
};

PairSet compute_pairs(const Panel& panel, const CohesionOptions& opts) {
    if (panel.size() < 2)
        throw DataError("cohesion needs at least two panel members");
    const TimeSeries& first = panel[0];
    const ScaleGrid grid =
        make_scale_grid(first.size(), first.dt(), opts.s0, opts.dj);
    std::vector<WaveletField> w(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i)
        w[i] = transform(panel[i], grid, opts.morlet);
    PairSet out;
    for (std::size_t i = 0; i < panel.size(); ++i)
        for (std::size_t j = i + 1; j < panel.size(); ++j) {
            out.rho.push_back(real_wavelet_correlation(w[i], w[j], opts.smoothing));
            out.index.emplace_back(i, j);
        }
    return out;
}

// pw[p] holds either a single constant weight or one weight per time column.
ScalarField weighted_average(const PairSet& pairs,
                             const std::vector<std::vector<double>>& pw) {
    ScalarField out = pairs.rho.front();
    out.name = "cohesion";
    out.series_i.clear();
    out.series_j.clear();
    const std::size_t n = out.n;
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        const std::size_t t = c % n;
        double num = 0.0, den = 0.0;
        for (std::size_t p = 0; p < pairs.rho.size(); ++p) {
            const double r = pairs.rho[p].values[c];
            if (std::isnan(r)) continue; // renormalize over defined pairs
            const double wp = pw[p].size() == 1 ? pw[p][0] : pw[p][t];
            num += wp * r;
            den += wp;
        }
        out.values[c] = den > 0.0 ? num / den : nan_cell;
    }
    return out;
}

const WeightSeries& weights_for(const std::vector<WeightSeries>& ws,
                                const std::string& name) {
    for (const auto& w : ws)
        if (w.name == name) return w;
    throw ConfigError("no weight series for panel member '" + name + "'");
}

} // namespace

ScalarField cohesion_fixed(const Panel& panel, const std::vector<WeightSeries>& weights,
                           std::int64_t anchor, const CohesionOptions& opts) {
    const PairSet pairs = compute_pairs(panel, opts);
    std::vector<double> member(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i)
        member[i] = weight_at(weights_for(weights, panel[i].name), anchor);
    std::vector<std::vector<double>> pw;
    pw.reserve(pairs.index.size());
    for (const auto& [i, j] : pairs.index)
        pw.push_back({pair_weight(member[i], member[j])});
    return weighted_average(pairs, pw);
}

ScalarField cohesion_time_varying(const Panel& panel,
                                  const std::vector<WeightSeries>& weights,
                                  const CohesionOptions& opts) {
    const PairSet pairs = compute_pairs(panel, opts);
    const TimeSeries& first = panel[0];
    std::vector<std::vector<double>> member(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i)
        member[i] = resample_weights(weights_for(weights, panel[i].name), first.t0,
                                     first.step, first.size());
    std::vector<std::vector<double>> pw;
    pw.reserve(pairs.index.size());
    for (const auto& [i, j] : pairs.index) {
        std::vector<double> w(first.size());
        for (std::size_t t = 0; t < w.size(); ++t)
            w[t] = pair_weight(member[i][t], member[j][t]);
        pw.push_back(std::move(w));
    }
    return weighted_average(pairs, pw);
}

ScalarField cohesion_equal(const Panel& panel, const CohesionOptions& opts) {
    const PairSet pairs = compute_pairs(panel, opts);
    std::vector<std::vector<double>> pw(pairs.index.size(),
                                        std::vector<double>{1.0});
    return weighted_average(pairs, pw);
}

ScalarField cohesion(const Panel& panel, const std::vector<WeightSeries>& weights,
                     const WeightScheme& scheme, const CohesionOptions& opts) {
    switch (scheme.kind) {
        case WeightSchemeKind::equal: return cohesion_equal(panel, opts);
        case WeightSchemeKind::fixed:
            return cohesion_fixed(panel, weights, scheme.anchor, opts);
        default: return cohesion_time_varying(panel, weights, opts);
    }
}

std::vector<ScalarField> pairwise_rho(const Panel& panel,
                                      const CohesionOptions& opts) {
    return compute_pairs(panel, opts).rho;
}

} // namespace wavesync
