#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wavesync/comovement.hpp"
#include "wavesync/timeseries.hpp"

namespace wavesync {

enum class WeightSchemeKind { equal, fixed, time_varying };

struct WeightScheme {
    WeightSchemeKind kind = WeightSchemeKind::equal;
    std::int64_t anchor = 0; // fixed: timestamp at which weights are frozen
};

// Pair weight is the product of the member weights.
inline double pair_weight(double wi, double wj) { return wi * wj; }

struct CohesionOptions {
    MorletParams morlet;
    SmoothingSpec smoothing;
    double s0 = 0.0;          // 0 = default 2*dt
    double dj = 1.0 / 12.0;
};

// Weighted average of the pairwise real wavelet correlation over unordered
// pairs i<j. Weights are renormalized per cell over the pairs whose rho is
// defined there; a cell where no pair is defined is NaN.
//
// weights: one WeightSeries per member, matched by name; required for the
// fixed and time_varying schemes (ConfigError if one is missing), ignored for
// equal.
ScalarField cohesion_fixed(const Panel& panel, const std::vector<WeightSeries>& weights,
                           std::int64_t anchor, const CohesionOptions& opts = {});

ScalarField cohesion_time_varying(const Panel& panel,
                                  const std::vector<WeightSeries>& weights,
                                  const CohesionOptions& opts = {});

// Equal weights (every pair weight 1): the plain mean of pairwise rho.
ScalarField cohesion_equal(const Panel& panel, const CohesionOptions& opts = {});

ScalarField cohesion(const Panel& panel, const std::vector<WeightSeries>& weights,
                     const WeightScheme& scheme, const CohesionOptions& opts = {});

// All pairwise rho fields (i<j order), exposed for tests and diffing.
std::vector<ScalarField> pairwise_rho(const Panel& panel,
                                      const CohesionOptions& opts = {});

} // namespace wavesync
