#pragma once
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pklab::fft {

// Half-complex spectrum of a real length-n signal: bins 0..n/2 (bin n/2 is
// the Nyquist mode). Unnormalized forward transform; inverse divides by n.
using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(std::span<const double> samples);
std::vector<double> inverse(const Spectrum& spectrum, std::size_t n);

} // namespace pklab::fft
