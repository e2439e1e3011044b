#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wavesync/cwt.hpp"
#include "wavesync/smoothing.hpp"

namespace wavesync {

// Real-valued time-frequency field sharing a wavelet field's geometry.
struct ScalarField {
    std::string name;
    std::string series_i, series_j;
    std::int64_t t0 = 0;
    std::int64_t step = 1;
    TimeUnit unit = TimeUnit::index;
    double dt = 1.0;
    std::size_t n = 0;
    MorletParams params;
    ScaleGrid grid;
    std::vector<double> coi;
    std::vector<double> values; // row-major, NaN marks undefined cells

    double at(std::size_t scale, std::size_t time) const {
        return values[scale * n + time];
    }
    std::size_t num_scales() const { return grid.size(); }
    bool inside_coi(std::size_t scale, std::size_t time) const {
        return scale_to_period(grid.scales[scale], params) <= coi[time];
    }
};

// W_i .* conj(W_j). Fields must share geometry (AlignmentError otherwise).
std::vector<std::complex<double>> cross_wavelet(const WaveletField& wi,
                                                const WaveletField& wj);

// Squared coherence: |S(s^{-1} W_ij)|^2 / (S(s^{-1}|W_i|^2) S(s^{-1}|W_j|^2)),
// clamped to [0,1]; cells with a zero denominator are NaN.
ScalarField squared_coherence(const WaveletField& wi, const WaveletField& wj,
                              const SmoothingSpec& spec = {});

// Phase of the smoothed cross spectrum, four-quadrant, in [-pi, pi].
// Positive phase: the first series leads.
ScalarField phase_difference(const WaveletField& wi, const WaveletField& wj,
                             const SmoothingSpec& spec = {});

// Real wavelet correlation: Re S(s^{-1} W_ij) over the same denominators as
// coherence; in [-1, 1]; equals sqrt(R^2)*cos(phase) cell by cell.
ScalarField real_wavelet_correlation(const WaveletField& wi, const WaveletField& wj,
                                     const SmoothingSpec& spec = {});

enum class PhaseClass {
    in_phase_i_leads,
    in_phase_j_leads,
    anti_phase_i_leads,
    anti_phase_j_leads,
};

std::string phase_class_name(PhaseClass c);

// Quadrant classification of a phase difference; boundary angles
// (0, +-pi/2, +-pi) go to the side on which series i leads.
PhaseClass classify_phase(double phi);

// One pass producing all three fields (plus the smoothed pieces the
// significance and bootstrap machinery reuse).
struct PairFields {
    ScalarField r2;
    ScalarField phase;
    ScalarField rho;
};

PairFields analyze_pair(const WaveletField& wi, const WaveletField& wj,
                        const SmoothingSpec& spec = {});

} // namespace wavesync
