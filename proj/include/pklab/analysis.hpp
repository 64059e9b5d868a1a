#pragma once
#include <cstddef>
#include <span>
#include <vector>

#include "pklab/grid.hpp"
#include "pklab/helmholtz.hpp"

namespace pklab {

struct Snapshot;

// max|v| + max|v_x| with spectral v_x (the sum convention; it is the one
// under which the certified horizon of the bundled blow-up datum comes out
// to 1/(12e)).
double w1inf_norm(const Field& v);

// Trapezoid of 4 b^2 v^2 + v_x^2 over the box, spectral v_x.
double h1_beta_norm_sq(const Field& v, const HelmholtzParams& params);

// max_x(|v_x| - 2|b| v); nonpositive up to tolerance certifies the kernel
// gradient bound for v obtained from nonnegative momentum.
double gradient_bound_residual(const Field& v, const HelmholtzParams& params);

// Characteristics seeded at x0: positions psi(t, x0) and the flow derivative
// psi_x(t, x0) > 0, recorded at the snapshot times.
struct Trajectory {
    std::vector<double> seeds;
    std::vector<double> times;
    std::vector<std::vector<double>> psi;   // [seed][time]
    std::vector<std::vector<double>> psi_x; // [seed][time]
    std::vector<bool> escaped;              // velocity data went non-finite
};

// Integrate d(psi)/dt = -4(v_x + 2 b v)(t, psi) with RK4 over the snapshot
// sequence (linear interpolation in x and t; periodic wrap in x). psi_x is
// integrated alongside through its exponential form. substeps = RK4 steps
// per snapshot interval.
Trajectory flow_map_integrate(const std::vector<Snapshot>& snapshots,
                              const HelmholtzParams& params,
                              std::span<const double> seeds, int substeps = 4);

struct LagrangianCheck {
    double residual = 0;           // max |n(t,psi) psi_x - n0(x0)| / max(1, ||n0||_inf)
    std::size_t escaped_paths = 0; // excluded from the max
};

LagrangianCheck lagrangian_residual(const Trajectory& trajectory,
                                    const std::vector<Snapshot>& snapshots,
                                    const Field& n0);

} // namespace pklab
