#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stegkit {

/// In-place radix-2 FFT; size must be a power of two. The inverse applies
/// the 1/N scale.
void fft(std::vector<std::complex<double>>& data, bool inverse);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

bool is_pow2(std::size_t n);

}  // namespace stegkit
