#include "pklab/helmholtz.hpp"

#include <cmath>
#include <stdexcept>

#include "pklab/fft.hpp"

namespace pklab {

namespace {

void require_beta0(const HelmholtzParams& p, const char* where) {
    if (p.beta0 == 0.0 || !std::isfinite(p.beta0))
        throw std::invalid_argument(std::string(where) + ": beta0 must be nonzero");
}

} // namespace

Field apply_p2(const Field& f, const HelmholtzParams& params) {
    require_beta0(params, "apply_p2");
    const auto& g = *f.grid;
    const double b2 = 4.0 * params.beta0 * params.beta0;
    auto spec = fft::forward(f.values);
    for (std::size_t j = 0; j <= g.n_points / 2; ++j) {
        const double k = g.wavenumber_abs(j);
        spec[j] /= b2 + k * k;
    }
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, g.n_points);
    return out;
}

Field apply_p1(const Field& f, const HelmholtzParams& params) {
    require_beta0(params, "apply_p1");
    const auto& g = *f.grid;
    const double b2 = 4.0 * params.beta0 * params.beta0;
    auto spec = fft::forward(f.values);
    const std::size_t half = g.n_points / 2;
    for (std::size_t j = 0; j < half; ++j) {
        const double k = g.wavenumber_abs(j);
        spec[j] *= std::complex<double>(0.0, k / (b2 + k * k));
    }
    spec[half] = 0.0;
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, g.n_points);
    return out;
}

std::vector<double> periodized_green_kernel(const Grid& grid, const HelmholtzParams& params) {
    require_beta0(params, "periodized_green_kernel");
    const double a = 2.0 * std::abs(params.beta0);
    const double norm = 1.0 / (2.0 * a);
    const double L = grid.half_width;
    const std::size_t n = grid.n_points;

    std::vector<double> kernel(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        // displacement mapped to [-L, L)
        double base = static_cast<double>(d) * grid.dx;
        if (base >= L) base -= 2.0 * L;
        // sum line-kernel images until they stop contributing
        double acc = 0.0;
        for (int m = 0;; ++m) {
            const double lo = std::exp(-a * std::abs(base - 2.0 * L * m));
            const double hi = (m == 0) ? 0.0 : std::exp(-a * std::abs(base + 2.0 * L * m));
            const double term = lo + hi;
            acc += term;
            if (term < 1e-16 * (acc + 1e-300)) break;
        }
        kernel[d] = norm * acc;
    }
    // Euler-Maclaurin correction for the |x| kink: the derivative jump of G
    // at 0 is -1 independent of beta0, so the trapezoid sum overshoots by
    // dx^2/12 * f at the diagonal. Folding it into the d = 0 sample keeps
    // green_convolve a plain cyclic convolution.
    kernel[0] -= grid.dx / 12.0;
    return kernel;
}

Field green_convolve(const Field& f, const HelmholtzParams& params) {
    require_beta0(params, "green_convolve");
    const auto kernel = periodized_green_kernel(*f.grid, params);
    const std::size_t n = f.size();
    const double* kv = kernel.data();
    const double* fv = f.values.data();
    Field out = make_field(f.grid);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += kv[j - i] * fv[i];
        for (std::size_t i = j + 1; i < n; ++i) acc += kv[n + j - i] * fv[i];
        out.values[j] = acc * f.dx();
    }
    return out;
}

Field n_from_v(const Field& v, const HelmholtzParams& params) {
    const double b2 = 4.0 * params.beta0 * params.beta0;
    Field out = second_derivative(v);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values[i] = b2 * v.values[i] - out.values[i];
    return out;
}

Field v_from_n(const Field& n, const HelmholtzParams& params) {
    return apply_p2(n, params);
}

} // namespace pklab
