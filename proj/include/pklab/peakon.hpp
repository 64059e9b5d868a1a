#pragma once
#include <functional>
#include <span>

#include "pklab/grid.hpp"

namespace pklab {

struct PeakonSpec {
    double a1 = 1.0;     // crest amplitude
    double a2 = 0.0;     // crest position at t = 0
    double beta0 = 1.0;  // nonzero
};

// Smooth compactly supported bump: amplitude * f(scale*(x-center)) with
// f(y) = exp(-1/(1-y^2)) for |y| < 1 and exactly 0 outside.
double bump(double x, double center, double scale, double amplitude);

// Traveling wave a1 * exp(-2*beta0*|x + 8*beta0*a1*t - a2|); the crest sits
// at x = a2 - 8*beta0*a1*t with value a1 for every t.
std::function<double(double)> exact_peakon(const PeakonSpec& spec, double t);
double peakon_crest_position(const PeakonSpec& spec, double t);

// Frozen-time superposition sum_i w_i * exp(-2*beta0*|x - x_i|).
std::function<double(double)> peakon_superposition(std::span<const double> weights,
                                                   std::span<const double> positions,
                                                   double beta0);

// Grid position of max |v|, refined by a 3-point parabolic fit (clamped to
// half a cell; the fit is biased at a kink, callers budget ~1 cell there).
// Plateau ties resolve to the smallest x.
double crest_position(const Field& v);

} // namespace pklab
