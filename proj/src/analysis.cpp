#include "pklab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pklab/timestepper.hpp"

namespace pklab {

double w1inf_norm(const Field& v) {
    return max_abs(v) + max_abs(derivative(v));
}

double h1_beta_norm_sq(const Field& v, const HelmholtzParams& params) {
    const Field vx = derivative(v);
    const double b2 = 4.0 * params.beta0 * params.beta0;
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc += b2 * v.values[i] * v.values[i] + vx.values[i] * vx.values[i];
    return acc * v.dx();
}

double gradient_bound_residual(const Field& v, const HelmholtzParams& params) {
    const Field vx = derivative(v);
    const double twob = 2.0 * std::abs(params.beta0);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::abs(vx.values[i]) - twob * v.values[i]);
    return worst;
}

namespace {

// periodic linear interpolation of a sampled field at position x
double interp_periodic(const Field& f, double x) {
    const auto& g = *f.grid;
    const double L = g.half_width;
    double y = std::fmod(x + L, 2.0 * L);
    if (y < 0) y += 2.0 * L;
    const double s = y / g.dx;
    const auto i0 = static_cast<std::size_t>(s) % g.n_points;
    const std::size_t i1 = (i0 + 1) % g.n_points;
    const double w = s - std::floor(s);
    return (1.0 - w) * f.values[i0] + w * f.values[i1];
}

struct VelocitySlice {
    Field u;  // -4 (v_x + 2 b v)
    Field ux; // its spectral x-derivative
};

} // namespace

Trajectory flow_map_integrate(const std::vector<Snapshot>& snapshots,
                              const HelmholtzParams& params,
                              std::span<const double> seeds, int substeps) {
    if (snapshots.size() < 2)
        throw std::invalid_argument("flow_map_integrate: need at least two snapshots");
    if (substeps < 1) throw std::invalid_argument("flow_map_integrate: substeps >= 1");

    std::vector<VelocitySlice> slices;
    slices.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        const Field vx = derivative(snap.v);
        Field u = make_field(snap.v.grid);
        for (std::size_t i = 0; i < u.size(); ++i)
            u.values[i] = -4.0 * (vx.values[i] + 2.0 * params.beta0 * snap.v.values[i]);
        Field ux = derivative(u);
        slices.push_back({std::move(u), std::move(ux)});
    }

    Trajectory out;
    out.seeds.assign(seeds.begin(), seeds.end());
    out.times.reserve(snapshots.size());
    for (const auto& s : snapshots) out.times.push_back(s.t);
    out.psi.assign(seeds.size(), {});
    out.psi_x.assign(seeds.size(), {});
    out.escaped.assign(seeds.size(), false);

    auto eval = [&](std::size_t interval, double t, double x, double& u, double& ux) {
        const double t0 = snapshots[interval].t;
        const double t1 = snapshots[interval + 1].t;
        const double w = (t1 > t0) ? std::clamp((t - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
        const auto& a = slices[interval];
        const auto& b = slices[interval + 1];
        u = (1.0 - w) * interp_periodic(a.u, x) + w * interp_periodic(b.u, x);
        ux = (1.0 - w) * interp_periodic(a.ux, x) + w * interp_periodic(b.ux, x);
    };

    for (std::size_t p = 0; p < seeds.size(); ++p) {
        double x = seeds[p];
        double logj = 0.0; // log psi_x
        out.psi[p].push_back(x);
        out.psi_x[p].push_back(1.0);
        bool escaped = false;
        for (std::size_t m = 0; m + 1 < snapshots.size() && !escaped; ++m) {
            const double t0 = snapshots[m].t;
            const double dt = (snapshots[m + 1].t - t0) / substeps;
            for (int s = 0; s < substeps; ++s) {
                const double ts = t0 + s * dt;
                double u1, w1, u2, w2, u3, w3, u4, w4;
                eval(m, ts, x, u1, w1);
                eval(m, ts + 0.5 * dt, x + 0.5 * dt * u1, u2, w2);
                eval(m, ts + 0.5 * dt, x + 0.5 * dt * u2, u3, w3);
                eval(m, ts + dt, x + dt * u3, u4, w4);
                x += dt / 6.0 * (u1 + 2.0 * u2 + 2.0 * u3 + u4);
                logj += dt / 6.0 * (w1 + 2.0 * w2 + 2.0 * w3 + w4);
                if (!std::isfinite(x) || !std::isfinite(logj)) {
                    escaped = true;
                    break;
                }
            }
            out.psi[p].push_back(x);
            out.psi_x[p].push_back(std::exp(logj));
        }
        out.escaped[p] = escaped;
    }
    return out;
}

LagrangianCheck lagrangian_residual(const Trajectory& trajectory,
                                    const std::vector<Snapshot>& snapshots,
                                    const Field& n0) {
    if (trajectory.times.size() > snapshots.size())
        throw std::invalid_argument("lagrangian_residual: trajectory/snapshot mismatch");
    LagrangianCheck check;
    const double scale = std::max(1.0, max_abs(n0));
    for (std::size_t p = 0; p < trajectory.seeds.size(); ++p) {
        if (trajectory.escaped[p]) {
            ++check.escaped_paths;
            continue;
        }
        const double n0_here = interp_periodic(n0, trajectory.seeds[p]);
        for (std::size_t m = 0; m < trajectory.psi[p].size(); ++m) {
            const double n_here = interp_periodic(snapshots[m].n, trajectory.psi[p][m]);
            const double err = std::abs(n_here * trajectory.psi_x[p][m] - n0_here);
            check.residual = std::max(check.residual, err / scale);
        }
    }
    return check;
}

} // namespace pklab
