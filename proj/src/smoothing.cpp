#include "wavesync/smoothing.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "wavesync/errors.hpp"
#include "wavesync/fft.hpp"
#include "wavesync/parallel.hpp"

namespace wavesync {
namespace {

std::uint64_t bits(double v) {
    std::uint64_t b;
    std::memcpy(&b, &v, sizeof b);
    return b;
}

// Spectrum of the wrapped unit-mass Gaussian on an n-circle. Real because the
// kernel is even on the circle; circular convolution with it preserves both
// constants and total mass exactly.
std::shared_ptr<const std::vector<double>> gauss_spectrum(std::size_t n, double sigma) {
    using Key = std::pair<std::size_t, std::uint64_t>;
    static std::mutex mu;
    static auto* cache = new std::map<Key, std::shared_ptr<const std::vector<double>>>();
    const Key key{n, bits(sigma)};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
    }
    std::vector<double> k(n, 0.0);
    const long reach = static_cast<long>(std::ceil(8.0 * sigma));
    const long wmax = reach / static_cast<long>(n) + 1;
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (long w = -wmax; w <= wmax; ++w) {
            const double off = static_cast<double>(r) +
                               static_cast<double>(w) * static_cast<double>(n);
            const double z = off / sigma;
            if (0.5 * z * z > 700.0) continue;
            acc += std::exp(-0.5 * z * z);
        }
        k[r] = acc;
        total += acc;
    }
    for (auto& v : k) v /= total;
    fft::cvec spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = k[i];
    fft::forward(spec);
    auto out = std::make_shared<std::vector<double>>(n);
    for (std::size_t i = 0; i < n; ++i) (*out)[i] = spec[i].real();
    std::lock_guard<std::mutex> lock(mu);
    if (cache->size() > 8192) cache->clear();
    cache->emplace(key, out);
    return (*cache)[key];
}

} // namespace

void smooth(std::vector<std::complex<double>>& m, const ScaleGrid& grid,
            std::size_t n, double dt, const SmoothingSpec& spec) {
    const std::size_t ns = grid.size();
    if (m.size() != ns * n)
        throw SizeError("smooth: matrix size does not match grid x n");
    if (!(spec.time_factor >= 0.0) || !(spec.scale_octaves >= 0.0))
        throw ConfigError("smoothing widths must be non-negative");

    // time direction: per-scale circular Gaussian
    parallel_for(0, ns, [&](std::size_t k) {
        const double sigma = spec.time_factor * grid.scales[k] / dt;
        if (sigma < 1e-9) return;
        auto ks = gauss_spectrum(n, sigma);
        fft::cvec row(m.begin() + static_cast<std::ptrdiff_t>(k * n),
                      m.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
        fft::forward(row);
        for (std::size_t i = 0; i < n; ++i) row[i] *= (*ks)[i];
        fft::inverse(row);
        std::copy(row.begin(), row.end(), m.begin() + static_cast<std::ptrdiff_t>(k * n));
    });

    // scale direction: boxcar of exactly scale_octaves/dj grid steps
    // (fractional end weights), truncated and renormalized at the grid edges
    const double w = spec.scale_octaves / grid.dj;
    if (w <= 1.0 || ns == 1) return;
    const long h = static_cast<long>(std::ceil((w - 1.0) / 2.0));
    std::vector<double> ww(static_cast<std::size_t>(2 * h + 1), 1.0);
    ww.front() = ww.back() = (w - static_cast<double>(2 * h - 1)) / 2.0;

    std::vector<std::complex<double>> out(m.size());
    parallel_for(0, ns, [&](std::size_t j) {
        const long lo = std::max<long>(0, static_cast<long>(j) - h);
        const long hi = std::min<long>(static_cast<long>(ns) - 1, static_cast<long>(j) + h);
        double norm = 0.0;
        for (long r = lo; r <= hi; ++r)
            norm += ww[static_cast<std::size_t>(r - static_cast<long>(j) + h)];
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (long r = lo; r <= hi; ++r)
                acc += ww[static_cast<std::size_t>(r - static_cast<long>(j) + h)] *
                       m[static_cast<std::size_t>(r) * n + i];
            out[j * n + i] = acc / norm;
        }
    });
    m.swap(out);
}

void smooth(std::vector<double>& m, const ScaleGrid& grid, std::size_t n,
            double dt, const SmoothingSpec& spec) {
    std::vector<std::complex<double>> c(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i];
    smooth(c, grid, n, dt, spec);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = c[i].real();
}

} // namespace wavesync
