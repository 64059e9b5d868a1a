#pragma once
#include "pklab/grid.hpp"

namespace pklab {

struct HelmholtzParams {
    double beta0 = 1.0;
};

// (4*beta0^2 - d_xx)^{-1} via the Fourier symbol 1/(4*beta0^2 + k^2).
Field apply_p2(const Field& f, const HelmholtzParams& params);

// d_x (4*beta0^2 - d_xx)^{-1}: symbol i*k/(4*beta0^2 + k^2), Nyquist zeroed.
Field apply_p1(const Field& f, const HelmholtzParams& params);

// Same operator as apply_p2 through the real-space kernel
//   G(x) = exp(-2|beta0||x|) / (4|beta0|),
// periodized over box images and convolved with quadrature weight dx.
// The kernel sample at the kink cell carries the trapezoid kink correction
// G(0) - dx/12, which removes the O(dx^2) quadrature floor; everything else
// is the plain sampled kernel. FFT-free, so it cross-checks the symbol route.
Field green_convolve(const Field& f, const HelmholtzParams& params);

// n = 4*beta0^2 v - v_xx and its inverse.
Field n_from_v(const Field& v, const HelmholtzParams& params);
Field v_from_n(const Field& n, const HelmholtzParams& params);

// Periodized kernel table: entry d holds G_per(d * dx) including the kink
// correction at d = 0 (what green_convolve convolves against).
std::vector<double> periodized_green_kernel(const Grid& grid, const HelmholtzParams& params);

} // namespace pklab
