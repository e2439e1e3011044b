#include "wavesync/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>

#include "wavesync/errors.hpp"

namespace wavesync {
namespace fft {
namespace {

// One forward/backward plan pair per length, planned once with FFTW_ESTIMATE
// (deterministic plan choice) and FFTW_UNALIGNED so they run on any buffer.
// Plan creation is serialized; execution via fftw_execute_dft is thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::unordered_map<std::size_t, PlanPair>& plan_cache() {
    static auto* cache = new std::unordered_map<std::size_t, PlanPair>();
    return *cache;
}

PlanPair get_plans(std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (pp.fwd == nullptr || pp.bwd == nullptr)
        throw SizeError("FFT planning failed for length " + std::to_string(n));
    cache.emplace(n, pp);
    return pp;
}

} // namespace

void forward(cvec& data) {
    if (data.empty()) return;
    PlanPair pp = get_plans(data.size());
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(pp.fwd, p, p);
}

void backward(cvec& data) {
    if (data.empty()) return;
    PlanPair pp = get_plans(data.size());
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(pp.bwd, p, p);
}

void inverse(cvec& data) {
    backward(data);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

} // namespace fft
} // namespace wavesync
