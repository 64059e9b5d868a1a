#include "pklab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pklab/fft.hpp"

namespace pklab {

namespace {
constexpr double kPi = std::numbers::pi;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

double Grid::wavenumber_abs(std::size_t bin) const {
    return kPi * static_cast<double>(bin) / half_width;
}

GridPtr make_grid(double half_width, std::size_t n_points) {
    if (!(half_width > 0))
        throw ConfigError("make_grid: half_width must be positive");
    if (n_points < 8 || !power_of_two(n_points))
        throw ConfigError("make_grid: n_points must be a power of two >= 8");

    auto g = std::make_shared<Grid>();
    g->half_width = half_width;
    g->n_points = n_points;
    g->dx = 2.0 * half_width / static_cast<double>(n_points);
    g->x.resize(n_points);
    g->wavenumber.resize(n_points);
    const auto n = static_cast<std::ptrdiff_t>(n_points);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        g->x[i] = -half_width + static_cast<double>(i) * g->dx;
        const std::ptrdiff_t j = (i < n / 2) ? i : i - n;
        g->wavenumber[i] = kPi * static_cast<double>(j) / half_width;
    }
    return g;
}

Field make_field(GridPtr grid, double fill) {
    Field f;
    f.values.assign(grid->n_points, fill);
    f.grid = std::move(grid);
    return f;
}

Field sample(const GridPtr& grid, const std::function<double(double)>& f) {
    Field out = make_field(grid);
    for (std::size_t i = 0; i < grid->n_points; ++i) {
        const double y = f(grid->x[i]);
        if (!std::isfinite(y))
            throw SamplingError("sample: function returned non-finite value at x=" +
                                std::to_string(grid->x[i]));
        out.values[i] = y;
    }
    return out;
}

Field derivative(const Field& f) {
    const auto& g = *f.grid;
    auto spec = fft::forward(f.values);
    const std::size_t half = g.n_points / 2;
    for (std::size_t j = 0; j < half; ++j)
        spec[j] *= std::complex<double>(0.0, g.wavenumber_abs(j));
    spec[half] = 0.0; // unpaired Nyquist mode carries no usable derivative
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, g.n_points);
    return out;
}

Field second_derivative(const Field& f) {
    const auto& g = *f.grid;
    auto spec = fft::forward(f.values);
    for (std::size_t j = 0; j <= g.n_points / 2; ++j) {
        const double k = g.wavenumber_abs(j);
        spec[j] *= -k * k;
    }
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, g.n_points);
    return out;
}

Field centered_derivative(const Field& f) {
    const std::size_t n = f.size();
    Field out = make_field(f.grid);
    const double inv2dx = 1.0 / (2.0 * f.dx());
    for (std::size_t i = 0; i < n; ++i) {
        const double fp = f.values[(i + 1) % n];
        const double fm = f.values[(i + n - 1) % n];
        out.values[i] = (fp - fm) * inv2dx;
    }
    return out;
}

Field upwind_derivative(const Field& f, const Field& wind) {
    require_same_grid(f, wind, "upwind_derivative");
    const std::size_t n = f.size();
    Field out = make_field(f.grid);
    const double invdx = 1.0 / f.dx();
    for (std::size_t i = 0; i < n; ++i) {
        if (wind.values[i] > 0.0) {
            out.values[i] = (f.values[(i + 1) % n] - f.values[i]) * invdx;
        } else {
            out.values[i] = (f.values[i] - f.values[(i + n - 1) % n]) * invdx;
        }
    }
    return out;
}

Field dealias_two_thirds(const Field& f) {
    const auto& g = *f.grid;
    auto spec = fft::forward(f.values);
    const double cutoff = (2.0 / 3.0) * g.nyquist();
    for (std::size_t j = 0; j <= g.n_points / 2; ++j)
        if (g.wavenumber_abs(j) > cutoff) spec[j] = 0.0;
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, g.n_points);
    return out;
}

double integrate(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.dx();
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const Field& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

bool all_finite(const Field& f) {
    return std::all_of(f.values.begin(), f.values.end(),
                       [](double v) { return std::isfinite(v); });
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (a.grid != b.grid &&
        (a.grid->n_points != b.grid->n_points ||
         a.grid->half_width != b.grid->half_width))
        throw ConfigError(std::string(where) + ": fields live on different grids");
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b, "operator+");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b, "operator-");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out = a;
    for (double& v : out.values) v *= s;
    return out;
}

Field& operator+=(Field& a, const Field& b) {
    require_same_grid(a, b, "operator+=");
    for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += b.values[i];
    return a;
}

} // namespace pklab
