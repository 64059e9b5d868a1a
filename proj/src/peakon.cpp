#include "pklab/peakon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pklab {

double bump(double x, double center, double scale, double amplitude) {
    if (!(scale > 0)) throw std::invalid_argument("bump: scale must be positive");
    const double y = scale * (x - center);
    const double y2 = y * y;
    if (y2 >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - y2));
}

std::function<double(double)> exact_peakon(const PeakonSpec& spec, double t) {
    if (spec.beta0 == 0.0)
        throw std::invalid_argument("exact_peakon: beta0 must be nonzero");
    const double a1 = spec.a1;
    const double b = spec.beta0;
    const double shift = 8.0 * b * a1 * t - spec.a2;
    return [a1, b, shift](double x) {
        return a1 * std::exp(-2.0 * b * std::abs(x + shift));
    };
}

double peakon_crest_position(const PeakonSpec& spec, double t) {
    return spec.a2 - 8.0 * spec.beta0 * spec.a1 * t;
}

std::function<double(double)> peakon_superposition(std::span<const double> weights,
                                                   std::span<const double> positions,
                                                   double beta0) {
    if (beta0 == 0.0)
        throw std::invalid_argument("peakon_superposition: beta0 must be nonzero");
    if (weights.size() != positions.size())
        throw std::invalid_argument("peakon_superposition: weights/positions size mismatch");
    std::vector<double> w(weights.begin(), weights.end());
    std::vector<double> p(positions.begin(), positions.end());
    const double twob = 2.0 * beta0;
    return [w, p, twob](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            s += w[i] * std::exp(-twob * std::abs(x - p[i]));
        return s;
    };
}

double crest_position(const Field& v) {
    const std::size_t n = v.size();
    std::size_t best = 0;
    double best_val = std::abs(v.values[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = std::abs(v.values[i]);
        if (a > best_val) { // strict: first (smallest-x) winner keeps a plateau
            best_val = a;
            best = i;
        }
    }
    const double ym = std::abs(v.values[(best + n - 1) % n]);
    const double y0 = best_val;
    const double yp = std::abs(v.values[(best + 1) % n]);
    const double denom = ym - 2.0 * y0 + yp;
    double delta = 0.0;
    if (std::abs(denom) > 1e-300) delta = 0.5 * (ym - yp) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    return v.grid->x[best] + delta * v.dx();
}

} // namespace pklab
