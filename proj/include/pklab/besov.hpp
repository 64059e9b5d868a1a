#pragma once
#include <vector>

#include "pklab/grid.hpp"

namespace pklab {

// Dyadic partition of unity on the grid wavenumbers: a low-frequency cutoff
// chi plus annulus profiles phi_j(k) = chi(k/2^{j+1}) - chi(k/2^j), built
// from a quintic smoothstep ramp between |k| = 3/4 and 4/3. Each phi_j is
// supported in (3/4) 2^j <= |k| <= (8/3) 2^j and non-adjacent annuli are
// disjoint. Profiles are stored on the half-spectrum bins 0..N/2.
struct DyadicPartition {
    GridPtr grid;
    int j_max = 0;                        // last annulus meeting the grid
    std::vector<double> chi;              // bin -> chi(|k|)
    std::vector<std::vector<double>> phi; // phi[j][bin], j = 0..j_max
};

// Requires N >= 32 (at least two annuli below Nyquist).
DyadicPartition build_partition(const GridPtr& grid);

// Frequency projection Delta_j f. j = -1 is the chi block; j outside
// [-1, j_max] gives the zero field.
Field dyadic_block(const Field& f, int j, const DyadicPartition& partition);

// Discrete L^p norm with quadrature weight dx (p = INFINITY for the sup).
double lp_norm(const Field& f, double p);

// || (2^{js} ||Delta_j f||_{L^p})_{j >= -1} ||_{l^r}; p, r >= 1 or INFINITY.
double besov_norm(const Field& f, double s, double p, double r,
                  const DyadicPartition& partition);

// The per-j weighted block norms 2^{js} ||Delta_j f||_{L^p}, j = -1..j_max.
std::vector<double> block_energies(const Field& f, double s, double p,
                                   const DyadicPartition& partition);

} // namespace pklab
