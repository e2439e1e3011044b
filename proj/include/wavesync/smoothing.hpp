#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wavesync/cwt.hpp"

namespace wavesync {

struct SmoothingSpec {
    // Gaussian time-kernel std in units of scale: std = time_factor * s / dt samples.
    double time_factor = 1.0;
    // Boxcar width across scales, in octaves.
    double scale_octaves = 0.6;
};

// Scale-dependent smoothing of a (num_scales x n) row-major matrix:
// per-scale circular Gaussian convolution along time, then a renormalized
// boxcar of scale_octaves/dj grid steps (fractional end weights) across
// scales. Kernels have unit mass, so a constant matrix is unchanged and total
// mass is conserved along the time axis.
void smooth(std::vector<std::complex<double>>& m, const ScaleGrid& grid,
            std::size_t n, double dt, const SmoothingSpec& spec = {});

void smooth(std::vector<double>& m, const ScaleGrid& grid, std::size_t n,
            double dt, const SmoothingSpec& spec = {});

} // namespace wavesync
