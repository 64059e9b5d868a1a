#include "pklab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pklab/fft.hpp"

namespace pklab {

namespace {

constexpr double kRampLo = 0.75;       // chi == 1 inside
constexpr double kRampHi = 4.0 / 3.0;  // chi == 0 outside

// quintic smoothstep: C^2, 0 -> 1 on [0, 1]
double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double chi_profile(double k) {
    const double a = std::abs(k);
    if (a <= kRampLo) return 1.0;
    if (a >= kRampHi) return 0.0;
    return 1.0 - smoothstep((a - kRampLo) / (kRampHi - kRampLo));
}

void check_index(double value, const char* name) {
    if (!(value >= 1.0))
        throw std::invalid_argument(std::string("besov_norm: ") + name +
                                    " must be >= 1 (or infinity)");
}

} // namespace

DyadicPartition build_partition(const GridPtr& grid) {
    if (grid->n_points < 32)
        throw ConfigError("build_partition: need N >= 32 for at least two annuli");

    DyadicPartition part;
    part.grid = grid;
    const std::size_t bins = grid->n_points / 2 + 1;
    const double k_top = grid->nyquist();

    // smallest J with chi(k / 2^{J+1}) == 1 for every grid bin, so the
    // telescoping sum closes exactly on the whole grid
    int j = 0;
    while (k_top / std::pow(2.0, j + 1) > kRampLo) ++j;
    part.j_max = j;

    part.chi.resize(bins);
    for (std::size_t m = 0; m < bins; ++m) part.chi[m] = chi_profile(grid->wavenumber_abs(m));
    part.phi.assign(static_cast<std::size_t>(part.j_max) + 1, std::vector<double>(bins));
    for (int jj = 0; jj <= part.j_max; ++jj) {
        const double scale = std::pow(2.0, jj);
        for (std::size_t m = 0; m < bins; ++m) {
            const double k = grid->wavenumber_abs(m);
            part.phi[jj][m] = chi_profile(k / (2.0 * scale)) - chi_profile(k / scale);
        }
    }
    return part;
}

Field dyadic_block(const Field& f, int j, const DyadicPartition& partition) {
    if (f.grid != partition.grid &&
        (f.grid->n_points != partition.grid->n_points ||
         f.grid->half_width != partition.grid->half_width))
        throw ConfigError("dyadic_block: field/partition grid mismatch");
    if (j < -1 || j > partition.j_max) return make_field(f.grid);

    const std::vector<double>& profile =
        (j == -1) ? partition.chi : partition.phi[static_cast<std::size_t>(j)];
    auto spec = fft::forward(f.values);
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= profile[m];
    Field out;
    out.grid = f.grid;
    out.values = fft::inverse(spec, f.grid->n_points);
    return out;
}

double lp_norm(const Field& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    check_index(p, "p");
    double acc = 0.0;
    for (double v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.dx(), 1.0 / p);
}

std::vector<double> block_energies(const Field& f, double s, double p,
                                   const DyadicPartition& partition) {
    std::vector<double> energies;
    energies.reserve(static_cast<std::size_t>(partition.j_max) + 2);
    for (int j = -1; j <= partition.j_max; ++j) {
        const double weight = std::pow(2.0, s * j);
        energies.push_back(weight * lp_norm(dyadic_block(f, j, partition), p));
    }
    return energies;
}

double besov_norm(const Field& f, double s, double p, double r,
                  const DyadicPartition& partition) {
    if (!std::isinf(p)) check_index(p, "p");
    if (!std::isinf(r)) check_index(r, "r");
    const auto energies = block_energies(f, s, p, partition);
    if (std::isinf(r)) return *std::max_element(energies.begin(), energies.end());
    double acc = 0.0;
    for (double e : energies) acc += std::pow(e, r);
    return std::pow(acc, 1.0 / r);
}

} // namespace pklab
