#include "wavesync/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "wavesync/errors.hpp"
#include "wavesync/fft.hpp"
#include "wavesync/parallel.hpp"

namespace wavesync {
namespace {

constexpr double pi = std::numbers::pi;

void validate_params(const MorletParams& p) {
    if (!(p.omega0 >= 5.0))
        throw DomainError("Morlet center frequency must be >= 5 (got " +
                          std::to_string(p.omega0) + ")");
    if (!(p.envelope_var > 0.0))
        throw DomainError("Morlet envelope variance must be positive");
}

std::uint64_t bits(double v) {
    std::uint64_t b;
    std::memcpy(&b, &v, sizeof b);
    return b;
}

// Sampled scaled wavelet kernel on the padded circle and its spectrum.
// q_m = (dt/sqrt(s)) conj(psi(m dt / s)) for m in (-P/2, P/2]; the returned
// multiplier is the e^{+i} DFT of q, i.e. exactly what turns fft(x) into the
// circular correlation sum_t x_t q_{t-tau}. With P >= 2n-1 that circular sum
// equals the plain Riemann sum of the transform integral.
fft::cvec make_multiplier(std::size_t P, double s, double dt, const MorletParams& p) {
    const double a = p.envelope_var;
    const double norm = std::pow(2.0 * a / pi, 0.25) * dt / std::sqrt(s);
    fft::cvec q(P, {0.0, 0.0});
    const std::size_t half = P / 2;
    for (std::size_t m1 = 0; m1 < P; ++m1) {
        const double m = m1 <= half ? static_cast<double>(m1)
                                    : static_cast<double>(m1) - static_cast<double>(P);
        const double u = m * dt / s;
        const double g = a * u * u;
        if (g > 700.0) continue;
        // conj(psi(u)) = norm * exp(-i w0 u - a u^2)
        q[m1] = std::polar(norm * std::exp(-g), -p.omega0 * u);
    }
    fft::backward(q);
    return q;
}

struct MultKey {
    std::size_t P;
    std::uint64_t s_over_dt, omega0, env;
    bool operator<(const MultKey& o) const {
        return std::tie(P, s_over_dt, omega0, env) <
               std::tie(o.P, o.s_over_dt, o.omega0, o.env);
    }
};

std::mutex mult_mutex;
std::map<MultKey, std::shared_ptr<const fft::cvec>>& mult_cache() {
    static auto* cache = new std::map<MultKey, std::shared_ptr<const fft::cvec>>();
    return *cache;
}

std::shared_ptr<const fft::cvec> multiplier(std::size_t P, double s, double dt,
                                            const MorletParams& p) {
    const MultKey key{P, bits(s / dt), bits(p.omega0), bits(p.envelope_var)};
    {
        std::lock_guard<std::mutex> lock(mult_mutex);
        auto it = mult_cache().find(key);
        if (it != mult_cache().end()) return it->second;
    }
    // The kernel depends on s and dt only through s/dt (u = m/(s/dt)) and a
    // global dt/sqrt(s) factor; normalize to dt=1 for the cached entry and let
    // callers rescale. Cheaper: bake the factor in, keyed by s/dt, and rescale
    // by dt-dependent ratio. Here dt enters norm as dt/sqrt(s) =
    // sqrt(dt) / sqrt(s/dt): compute with dt=1 and scale by sqrt(dt).
    auto value = std::make_shared<fft::cvec>(make_multiplier(P, s / dt, 1.0, p));
    std::lock_guard<std::mutex> lock(mult_mutex);
    auto& cache = mult_cache();
    if (cache.size() > 8192) cache.clear();
    cache.emplace(key, value);
    return cache[key];
}

ScaleGrid grid_or_default(const ScaleGrid& grid, std::size_t n, double dt) {
    if (!grid.scales.empty()) return grid;
    return make_scale_grid(n, dt);
}

void validate_series_for_transform(const TimeSeries& x) {
    if (x.size() < 8)
        throw TooShort("transform needs at least 8 samples, got " +
                       std::to_string(x.size()));
    if (x.step <= 0) throw SamplingError("transform: non-positive sampling step");
}

WaveletField make_field_shell(const TimeSeries& x, const ScaleGrid& grid,
                              const MorletParams& p) {
    WaveletField f;
    f.series_name = x.name;
    f.t0 = x.t0;
    f.step = x.step;
    f.unit = x.unit;
    f.dt = x.dt();
    f.n = x.size();
    f.params = p;
    f.grid = grid;
    f.coi = cone_of_influence(f.n, f.dt, p);
    f.w.assign(grid.size() * f.n, {0.0, 0.0});
    return f;
}

} // namespace

double fourier_factor(const MorletParams& p) {
    validate_params(p);
    return 4.0 * pi / (p.omega0 + std::sqrt(4.0 * p.envelope_var + p.omega0 * p.omega0));
}

double scale_to_period(double s, const MorletParams& p) {
    return s * fourier_factor(p);
}

double period_to_scale(double period, const MorletParams& p) {
    return period / fourier_factor(p);
}

std::complex<double> morlet(double t, const MorletParams& p) {
    const double a = p.envelope_var;
    return std::polar(std::pow(2.0 * a / pi, 0.25) * std::exp(-a * t * t),
                      p.omega0 * t);
}

ScaleGrid make_scale_grid(std::size_t n, double dt, double s0, double dj) {
    if (n < 8) throw TooShort("scale grid needs n >= 8");
    if (!(dt > 0.0)) throw SamplingError("scale grid needs dt > 0");
    if (s0 <= 0.0) s0 = 2.0 * dt;
    if (s0 < 2.0 * dt - 1e-12 * dt)
        throw ScaleError("smallest scale must be >= 2*dt");
    if (!(dj > 0.0) || dj > 0.25)
        throw ScaleError("scale step dj must be in (0, 1/4]");
    const double span = std::log2(static_cast<double>(n) * dt / s0);
    if (span < 0.0)
        throw ScaleError("smallest scale exceeds the series span");
    // Guard the exact-boundary cases (e.g. span an integer) against the
    // representation error of 1/dj.
    const long J = static_cast<long>(std::floor(span / dj + 1e-9));
    ScaleGrid g;
    g.s0 = s0;
    g.dj = dj;
    g.scales.resize(static_cast<std::size_t>(J) + 1);
    for (long k = 0; k <= J; ++k)
        g.scales[static_cast<std::size_t>(k)] =
            s0 * std::exp2(dj * static_cast<double>(k));
    return g;
}

std::vector<double> cone_of_influence(std::size_t n, double dt, const MorletParams& p) {
    const double ff = fourier_factor(p);
    const double efold = std::sqrt(p.envelope_var);
    std::vector<double> coi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(std::min(i, n - 1 - i));
        coi[i] = ff * d * dt * efold;
    }
    return coi;
}

WaveletField transform(const TimeSeries& x, const ScaleGrid& grid_in,
                       const MorletParams& p) {
    validate_params(p);
    validate_series_for_transform(x);
    const std::size_t n = x.size();
    const double dt = x.dt();
    const ScaleGrid grid = grid_or_default(grid_in, n, dt);
    WaveletField f = make_field_shell(x, grid, p);

    const std::size_t P = fft::next_pow2(2 * n);
    fft::cvec xhat(P, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) xhat[i] = x.values[i];
    fft::forward(xhat);

    const double sqrt_dt = std::sqrt(dt);
    parallel_for(0, grid.size(), [&](std::size_t k) {
        const double s = grid.scales[k];
        auto mult = multiplier(P, s, dt, p);
        fft::cvec row(P);
        for (std::size_t i = 0; i < P; ++i) row[i] = xhat[i] * (*mult)[i];
        fft::inverse(row);
        // cached multiplier was built at dt=1; the kernel amplitude carries a
        // further sqrt(dt) (see multiplier()).
        for (std::size_t i = 0; i < n; ++i) f.at(k, i) = row[i] * sqrt_dt;
    });
    return f;
}

WaveletField transform_direct(const TimeSeries& x, const ScaleGrid& grid_in,
                              const MorletParams& p) {
    validate_params(p);
    validate_series_for_transform(x);
    const std::size_t n = x.size();
    if (n > 1024)
        throw SizeError("transform_direct supports n <= 1024, got " + std::to_string(n));
    const double dt = x.dt();
    const ScaleGrid grid = grid_or_default(grid_in, n, dt);
    WaveletField f = make_field_shell(x, grid, p);

    parallel_for(0, grid.size(), [&](std::size_t k) {
        const double s = grid.scales[k];
        // kernel over all offsets m = t - tau in [-(n-1), n-1]
        std::vector<std::complex<double>> ker(2 * n - 1);
        for (std::size_t j = 0; j < ker.size(); ++j) {
            const double m = static_cast<double>(j) - static_cast<double>(n - 1);
            ker[j] = (dt / std::sqrt(s)) * std::conj(morlet(m * dt / s, p));
        }
        for (std::size_t tau = 0; tau < n; ++tau) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t t = 0; t < n; ++t)
                acc += x.values[t] * ker[t - tau + (n - 1)];
            f.at(k, tau) = acc;
        }
    });
    return f;
}

std::vector<double> power(const WaveletField& f) {
    std::vector<double> p(f.w.size());
    for (std::size_t i = 0; i < f.w.size(); ++i) p[i] = std::norm(f.w[i]);
    return p;
}

namespace {

// Synthesis kernel spectrum: e^{-i} DFT of g_m = (dt/sqrt(s)) psi(m dt/s),
// used as a plain circular convolution multiplier.
fft::cvec synthesis_spectrum(std::size_t P, double s, double dt, const MorletParams& p) {
    const double a = p.envelope_var;
    const double norm = std::pow(2.0 * a / pi, 0.25) * dt / std::sqrt(s);
    fft::cvec g(P, {0.0, 0.0});
    const std::size_t half = P / 2;
    for (std::size_t m1 = 0; m1 < P; ++m1) {
        const double m = m1 <= half ? static_cast<double>(m1)
                                    : static_cast<double>(m1) - static_cast<double>(P);
        const double u = m * dt / s;
        const double gg = a * u * u;
        if (gg > 700.0) continue;
        g[m1] = std::polar(norm * std::exp(-gg), p.omega0 * u);
    }
    fft::forward(g);
    return g;
}

// Double sum over scales and times, no normalization constant yet.
std::vector<double> reconstruct_raw(const WaveletField& f) {
    const std::size_t n = f.n;
    const std::size_t P = fft::next_pow2(2 * n);
    std::vector<double> out(n, 0.0);
    const double ln2 = std::log(2.0);
    for (std::size_t k = 0; k < f.num_scales(); ++k) {
        const double s = f.grid.scales[k];
        fft::cvec row(P, {0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) row[i] = f.at(k, i);
        fft::forward(row);
        const fft::cvec g = synthesis_spectrum(P, s, f.dt, f.params);
        for (std::size_t i = 0; i < P; ++i) row[i] *= g[i];
        fft::inverse(row);
        const double c = ln2 * f.grid.dj / s;
        for (std::size_t i = 0; i < n; ++i) out[i] += c * row[i].real();
    }
    return out;
}

struct CalKey {
    std::size_t n;
    std::uint64_t dt, s0, dj, omega0, env;
    std::size_t nscales;
    bool operator<(const CalKey& o) const {
        return std::tie(n, dt, s0, dj, omega0, env, nscales) <
               std::tie(o.n, o.dt, o.s0, o.dj, o.omega0, o.env, o.nscales);
    }
};

std::mutex cal_mutex;
std::map<CalKey, double>& cal_cache() {
    static auto* cache = new std::map<CalKey, double>();
    return *cache;
}

// End-to-end response of transform + raw double-sum reconstruction, measured
// by pushing a centered delta through and reading its spectrum. The constant
// is the median response over interior periods (the plateau); the band edges
// roll off because the grid truncates the scale integral.
double calibration_constant(const WaveletField& like) {
    const CalKey key{like.n,          bits(like.dt),
                     bits(like.grid.s0), bits(like.grid.dj),
                     bits(like.params.omega0), bits(like.params.envelope_var),
                     like.num_scales()};
    {
        std::lock_guard<std::mutex> lock(cal_mutex);
        auto it = cal_cache().find(key);
        if (it != cal_cache().end()) return it->second;
    }
    const std::size_t n = like.n;
    TimeSeries d;
    d.name = "delta";
    d.t0 = 0;
    d.step = like.step;
    d.unit = like.unit;
    d.values.assign(n, 0.0);
    const std::size_t i0 = n / 2;
    d.values[i0] = 1.0;
    WaveletField wd = transform(d, like.grid, like.params);
    std::vector<double> raw = reconstruct_raw(wd);

    fft::cvec spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = raw[i];
    fft::forward(spec);
    const double ff = fourier_factor(like.params);
    const double lo = 2.0 * ff * like.grid.s0;
    const double hi = ff * like.grid.scales.back() / 2.0;
    std::vector<double> band;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double period = static_cast<double>(n) * like.dt / static_cast<double>(k);
        if (period < lo || period > hi) continue;
        // undo the delta's position phase
        const double ang = 2.0 * pi * static_cast<double>(k) *
                           static_cast<double>(i0) / static_cast<double>(n);
        band.push_back((spec[k] * std::polar(1.0, ang)).real());
    }
    if (band.empty())
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double ang = 2.0 * pi * static_cast<double>(k) *
                               static_cast<double>(i0) / static_cast<double>(n);
            band.push_back((spec[k] * std::polar(1.0, ang)).real());
        }
    std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
    double c = band[band.size() / 2];
    if (!(c > 0.0))
        throw DegenerateError("reconstruction calibration produced a non-positive constant");
    std::lock_guard<std::mutex> lock(cal_mutex);
    cal_cache().emplace(key, c);
    return c;
}

} // namespace

TimeSeries reconstruct(const WaveletField& f) {
    if (f.n < 8 || f.grid.scales.empty())
        throw TooShort("reconstruct: empty or undersized field");
    const double c = calibration_constant(f);
    std::vector<double> raw = reconstruct_raw(f);
    for (auto& v : raw) v /= c;
    return make_series(f.series_name, f.t0, f.step, std::move(raw), f.unit);
}

} // namespace wavesync
