#include "wavesync/comovement.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wavesync/errors.hpp"

namespace wavesync {
namespace {

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();
constexpr double pi = std::numbers::pi;

void check_same_geometry(const WaveletField& a, const WaveletField& b) {
    if (a.n != b.n || a.t0 != b.t0 || a.step != b.step || a.unit != b.unit)
        throw AlignmentError("wavelet fields are on different time axes");
    if (a.grid.scales != b.grid.scales)
        throw AlignmentError("wavelet fields use different scale grids");
    if (a.params.omega0 != b.params.omega0 ||
        a.params.envelope_var != b.params.envelope_var)
        throw AlignmentError("wavelet fields use different wavelet parameters");
}

ScalarField shell(const WaveletField& wi, const WaveletField& wj,
                  const std::string& name) {
    ScalarField f;
    f.name = name;
    f.series_i = wi.series_name;
    f.series_j = wj.series_name;
    f.t0 = wi.t0;
    f.step = wi.step;
    f.unit = wi.unit;
    f.dt = wi.dt;
    f.n = wi.n;
    f.params = wi.params;
    f.grid = wi.grid;
    f.coi = wi.coi;
    f.values.assign(wi.grid.size() * wi.n, nan_cell);
    return f;
}

// Shared pipeline: s^{-1}-weighted smoothed cross spectrum and powers.
struct SmoothedPieces {
    std::vector<std::complex<double>> cross;
    std::vector<double> pi_, pj_;
};

SmoothedPieces smoothed_pieces(const WaveletField& wi, const WaveletField& wj,
                               const SmoothingSpec& spec, bool want_denominators) {
    const std::size_t ns = wi.grid.size(), n = wi.n;
    SmoothedPieces out;
    out.cross.resize(ns * n);
    for (std::size_t k = 0; k < ns; ++k) {
        const double inv_s = 1.0 / wi.grid.scales[k];
        for (std::size_t i = 0; i < n; ++i)
            out.cross[k * n + i] = inv_s * wi.at(k, i) * std::conj(wj.at(k, i));
    }
    smooth(out.cross, wi.grid, n, wi.dt, spec);
    if (!want_denominators) return out;
    out.pi_.resize(ns * n);
    out.pj_.resize(ns * n);
    for (std::size_t k = 0; k < ns; ++k) {
        const double inv_s = 1.0 / wi.grid.scales[k];
        for (std::size_t i = 0; i < n; ++i) {
            out.pi_[k * n + i] = inv_s * std::norm(wi.at(k, i));
            out.pj_[k * n + i] = inv_s * std::norm(wj.at(k, i));
        }
    }
    smooth(out.pi_, wi.grid, n, wi.dt, spec);
    smooth(out.pj_, wi.grid, n, wi.dt, spec);
    return out;
}

} // namespace

std::vector<std::complex<double>> cross_wavelet(const WaveletField& wi,
                                                const WaveletField& wj) {
    check_same_geometry(wi, wj);
    std::vector<std::complex<double>> x(wi.w.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = wi.w[i] * std::conj(wj.w[i]);
    return x;
}

PairFields analyze_pair(const WaveletField& wi, const WaveletField& wj,
                        const SmoothingSpec& spec) {
    check_same_geometry(wi, wj);
    PairFields out{shell(wi, wj, "coherence"), shell(wi, wj, "phase"),
                   shell(wi, wj, "correlation")};
    const SmoothedPieces p = smoothed_pieces(wi, wj, spec, true);
    for (std::size_t c = 0; c < p.cross.size(); ++c) {
        const double den = p.pi_[c] * p.pj_[c];
        if (!(den > 0.0)) continue; // NaN cells
        const double r2 = std::norm(p.cross[c]) / den;
        out.r2.values[c] = std::min(1.0, std::max(0.0, r2));
        out.phase.values[c] = std::atan2(p.cross[c].imag(), p.cross[c].real());
        const double rho = p.cross[c].real() / std::sqrt(den);
        out.rho.values[c] = std::min(1.0, std::max(-1.0, rho));
    }
    return out;
}

ScalarField squared_coherence(const WaveletField& wi, const WaveletField& wj,
                              const SmoothingSpec& spec) {
    return analyze_pair(wi, wj, spec).r2;
}

ScalarField phase_difference(const WaveletField& wi, const WaveletField& wj,
                             const SmoothingSpec& spec) {
    check_same_geometry(wi, wj);
    // phase needs only the smoothed cross spectrum
    ScalarField f = shell(wi, wj, "phase");
    const SmoothedPieces p = smoothed_pieces(wi, wj, spec, false);
    for (std::size_t c = 0; c < p.cross.size(); ++c) {
        if (p.cross[c] == std::complex<double>{0.0, 0.0}) continue;
        f.values[c] = std::atan2(p.cross[c].imag(), p.cross[c].real());
    }
    return f;
}

ScalarField real_wavelet_correlation(const WaveletField& wi, const WaveletField& wj,
                                     const SmoothingSpec& spec) {
    return analyze_pair(wi, wj, spec).rho;
}

std::string phase_class_name(PhaseClass c) {
    switch (c) {
        case PhaseClass::in_phase_i_leads: return "in_phase_i_leads";
        case PhaseClass::in_phase_j_leads: return "in_phase_j_leads";
        case PhaseClass::anti_phase_i_leads: return "anti_phase_i_leads";
        default: return "anti_phase_j_leads";
    }
}

PhaseClass classify_phase(double phi) {
    if (std::isnan(phi) || phi < -pi || phi > pi)
        throw DomainError("phase must be in [-pi, pi]");
    // Boundaries (0, +-pi/2, +-pi) belong to the side where series i leads.
    if (phi >= 0.0 && phi <= pi / 2) return PhaseClass::in_phase_i_leads;
    if (phi > -pi / 2 && phi < 0.0) return PhaseClass::in_phase_j_leads;
    if (phi > pi / 2 && phi < pi) return PhaseClass::anti_phase_j_leads;
    return PhaseClass::anti_phase_i_leads; // [-pi, -pi/2] and +pi
}

} // namespace wavesync
