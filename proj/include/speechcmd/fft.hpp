#pragma once

#include <complex>
#include <vector>

namespace speechcmd::dsp {

bool is_power_of_two(std::size_t n);

// In-place iterative radix-2 DIT transform. Size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);

// Forward DFT of a real frame zero-padded to fft_size.
std::vector<std::complex<double>> fft_real(const std::vector<double>& frame, std::size_t fft_size);

}  // namespace speechcmd::dsp
