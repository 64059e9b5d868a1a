#pragma once
#include <optional>
#include <string>
#include <vector>

#include "pklab/config.hpp"
#include "pklab/dynamics.hpp"

namespace pklab {

struct DiagnosticsRecord {
    double t = 0;
    double linf_n = 0;
    double w1inf_v = 0;   // max|v| + max|v_x|
    double h1beta_sq = 0; // trapezoid of 4 b^2 v^2 + v_x^2
    double min_n = 0;
    double cfl_number = 0;
};

struct Snapshot {
    double t = 0;
    Field v;
    Field n;
};

enum class VerdictKind { completed, blowup_detected, unstable };

struct Verdict {
    VerdictKind kind = VerdictKind::completed;
    // blow-up bracket: last step with finite, sub-threshold data and the
    // offending step (the discrete scheme cannot resolve a point time)
    double t_low = 0;
    double t_high = 0;
    std::string detail;
};

struct SimResult {
    std::vector<DiagnosticsRecord> diagnostics;
    std::vector<Snapshot> snapshots;
    std::vector<std::pair<double, double>> crest_track; // (t, crest x) when enabled
    Verdict verdict;
    double initial_linf_n = 0;
};

// dt = safety * dx / max(eps, max|4(v_x + 2 b v)|); callers cap it against
// the remaining horizon. eps = 1e-12 guards the zero-velocity case.
double cfl_dt(const StateV& state, double safety);

// One explicit step. euler_upwind is the first-order reference scheme
// (upwind v_x inside the RHS); rk4_spectral is the classical 4-stage update
// with spectral derivatives and dealiasing.
StateV step(const StateV& state, double dt, Scheme scheme);

SimResult run(const SimConfig& config);

const char* to_string(VerdictKind kind);

} // namespace pklab
