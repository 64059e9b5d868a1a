#include "pklab/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pklab/analysis.hpp"
#include "pklab/peakon.hpp"

namespace pklab {

namespace {

constexpr double kSpeedFloor = 1e-12;

DiagnosticsRecord diagnose(const StateV& state, const Field& n, double cfl_number) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.linf_n = max_abs(n);
    rec.w1inf_v = w1inf_norm(state.v);
    rec.h1beta_sq = h1_beta_norm_sq(state.v, state.params);
    rec.min_n = min_value(n);
    rec.cfl_number = cfl_number;
    return rec;
}

} // namespace

namespace {

// Conservative transport-speed bound max |4(v_x + 2 b v)| with the one-sided
// slope magnitudes: at a steepening front the centered difference averages
// the two sides and under-reports the stability-relevant wind.
double cfl_speed(const Field& v, const HelmholtzParams& params) {
    const std::size_t n = v.size();
    const double invdx = 1.0 / v.dx();
    const double twob = 2.0 * std::abs(params.beta0);
    double speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fwd = std::abs(v.values[(i + 1) % n] - v.values[i]) * invdx;
        const double bwd = std::abs(v.values[i] - v.values[(i + n - 1) % n]) * invdx;
        speed = std::max(speed, 4.0 * (std::max(fwd, bwd) + twob * std::abs(v.values[i])));
    }
    return speed;
}

} // namespace

double cfl_dt(const StateV& state, double safety) {
    return safety * state.v.dx() /
           std::max(kSpeedFloor, cfl_speed(state.v, state.params));
}

StateV step(const StateV& state, double dt, Scheme scheme) {
    StateV next = state;
    next.t = state.t + dt;
    if (scheme == Scheme::euler_upwind) {
        Field k = rhs_v(state, DerivMode::upwind);
        next.v = state.v + dt * k;
        return next;
    }
    // classical RK4 with spectral derivatives
    StateV stage = state;
    Field k1 = rhs_v(stage, DerivMode::spectral);
    stage.t = state.t + 0.5 * dt;
    stage.v = state.v + (0.5 * dt) * k1;
    Field k2 = rhs_v(stage, DerivMode::spectral);
    stage.v = state.v + (0.5 * dt) * k2;
    Field k3 = rhs_v(stage, DerivMode::spectral);
    stage.t = state.t + dt;
    stage.v = state.v + dt * k3;
    Field k4 = rhs_v(stage, DerivMode::spectral);
    Field incr = k1 + 2.0 * k2 + 2.0 * k3 + k4;
    next.v = state.v + (dt / 6.0) * incr;
    return next;
}

SimResult run(const SimConfig& config) {
    if (!(config.t_end > 0)) throw ConfigError("run: t_end must be positive");
    if (!(config.cfl_safety > 0) || config.cfl_safety > 1)
        throw ConfigError("run: cfl_safety must be in (0,1]");
    if (!(config.blowup_factor > 1)) throw ConfigError("run: blowup_factor must be > 1");

    const GridPtr grid = make_grid(config.half_width, config.n_points);
    StateV state{0.0, build_initial_v(config.initial, grid, config.params), config.params};

    SimResult result;
    Field n = n_from_v(state.v, config.params);
    result.initial_linf_n = max_abs(n);
    const double snap_dt = config.effective_snapshot_dt();

    auto record_snapshot = [&](const StateV& s, const Field& nn) {
        result.snapshots.push_back({s.t, s.v, nn});
        if (config.track_crest)
            result.crest_track.emplace_back(s.t, crest_position(s.v));
    };

    result.diagnostics.push_back(diagnose(state, n, 0.0));
    record_snapshot(state, n);

    const double blowup_level = config.blowup_factor * std::max(result.initial_linf_n, 1e-300);
    double next_snap = snap_dt;
    double prev_linf = result.initial_linf_n;
    std::size_t step_index = 0;

    while (true) {
        const double remaining = config.t_end - state.t;
        if (remaining <= std::max(config.dt_min, 1e-12 * config.t_end)) break;

        double dt = cfl_dt(state, config.cfl_safety);
        if (dt < config.dt_min) {
            // CFL collapse: treat as blow-up when the sup norm is climbing,
            // otherwise report instability
            result.verdict.kind = (prev_linf > 2.0 * result.initial_linf_n)
                                      ? VerdictKind::blowup_detected
                                      : VerdictKind::unstable;
            result.verdict.t_low = result.diagnostics.back().t;
            result.verdict.t_high = state.t;
            result.verdict.detail = "time step collapsed below dt_min";
            Field n_now = n_from_v(state.v, config.params);
            record_snapshot(state, n_now);
            return result;
        }
        dt = std::min(dt, remaining);
        if (state.t < next_snap &&
            (next_snap < config.t_end || std::abs(next_snap - config.t_end) < 1e-12))
            dt = std::min(dt, next_snap - state.t);

        const double t_before = state.t;
        StateV next = step(state, dt, config.scheme);
        ++step_index;
        Field n_next = n_from_v(next.v, config.params);
        const bool finite = all_finite(next.v) && all_finite(n_next);
        const double linf = finite ? max_abs(n_next) : std::numeric_limits<double>::infinity();
        const double cfl_number =
            dt * std::max(kSpeedFloor, cfl_speed(state.v, state.params)) / state.v.dx();

        if (!finite || linf >= blowup_level) {
            // Non-finite data with no preceding growth is numerical
            // instability, not the PDE's blow-up.
            const bool grew = prev_linf >= 10.0 * result.initial_linf_n || linf >= blowup_level;
            result.verdict.kind = (!finite && !grew) ? VerdictKind::unstable
                                                     : VerdictKind::blowup_detected;
            result.verdict.t_low = t_before;
            result.verdict.t_high = next.t;
            result.verdict.detail = finite ? "sup norm of n crossed blowup_factor"
                                           : "non-finite values appeared";
            result.diagnostics.push_back(diagnose(next, n_next, cfl_number));
            record_snapshot(next, n_next);
            return result;
        }

        state = std::move(next);
        prev_linf = linf;

        const bool at_snap = std::abs(state.t - next_snap) < 1e-10 * std::max(1.0, config.t_end);
        if (step_index % config.diag_every == 0 || at_snap ||
            state.t >= config.t_end - 1e-14)
            result.diagnostics.push_back(diagnose(state, n_next, cfl_number));
        if (at_snap) {
            record_snapshot(state, n_next);
            next_snap += snap_dt;
        }
    }

    if (std::abs(result.snapshots.back().t - state.t) > 1e-12) {
        Field n_final = n_from_v(state.v, config.params);
        record_snapshot(state, n_final);
    }
    result.verdict.kind = VerdictKind::completed;
    result.verdict.t_low = result.verdict.t_high = state.t;
    return result;
}

const char* to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::completed: return "completed";
        case VerdictKind::blowup_detected: return "blowup_detected";
        case VerdictKind::unstable: return "unstable";
    }
    return "unknown";
}

} // namespace pklab
