#pragma once
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "pklab/errors.hpp"

namespace pklab {

// Uniform periodic grid on [-L, L), N a power of two. Wavenumbers are
// pi*j/L in standard FFT ordering (0, 1, ..., N/2-1, -N/2, ..., -1).
struct Grid {
    double half_width = 0;  // L
    std::size_t n_points = 0;
    double dx = 0;
    std::vector<double> x;
    std::vector<double> wavenumber;

    double nyquist() const { return wavenumber_abs(n_points / 2); }
    // |k| of half-spectrum bin j = 0..N/2
    double wavenumber_abs(std::size_t bin) const;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double half_width, std::size_t n_points);

// Real samples of a function on a Grid.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double dx() const { return grid->dx; }
};

Field make_field(GridPtr grid, double fill = 0.0);
Field sample(const GridPtr& grid, const std::function<double(double)>& f);

// Spectral derivative (Nyquist mode zeroed) and second derivative (-k^2).
Field derivative(const Field& f);
Field second_derivative(const Field& f);

// Second-order centered difference; local and bounded by the one-sided
// slopes, so it stays finite-sane across kinks (used for CFL winds).
Field centered_derivative(const Field& f);

// One-sided first difference for the advection form  d_t f - wind * d_x f.
// Forward difference where wind > 0 (characteristics come from the right),
// backward difference otherwise; periodic wraparound.
Field upwind_derivative(const Field& f, const Field& wind);

// Zero all modes with |k| above 2/3 of the Nyquist wavenumber.
Field dealias_two_thirds(const Field& f);

double integrate(const Field& f);  // dx * sum (periodic trapezoid)
double max_abs(const Field& f);
double min_value(const Field& f);
bool all_finite(const Field& f);

void require_same_grid(const Field& a, const Field& b, const char* where);

// Elementwise arithmetic on fields sharing a grid.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field& operator+=(Field& a, const Field& b);

} // namespace pklab
