#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wavesync {
namespace fft {

using cvec = std::vector<std::complex<double>>;

// Unnormalized DFT, e^{-i 2 pi k m / N} convention. Any length. Thread-safe;
// plans are cached per length behind a mutex and executed lock-free.
void forward(cvec& data);
// Unnormalized inverse kernel e^{+i 2 pi k m / N} (no 1/N).
void backward(cvec& data);
// backward followed by 1/N scaling.
void inverse(cvec& data);

std::size_t next_pow2(std::size_t v);

} // namespace fft
} // namespace wavesync
