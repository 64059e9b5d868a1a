#pragma once
#include <cstddef>
#include <string>
#include <vector>

#include "pklab/grid.hpp"
#include "pklab/helmholtz.hpp"

namespace pklab {

enum class Scheme { euler_upwind, rk4_spectral };

// Named initial-data generator. *_n0 kinds prescribe the momentum density
// (v0 = P2 n0); the others prescribe v0 directly.
struct InitialData {
    enum class Kind { bump_n0, bump_v0, peakon, superposition };
    Kind kind = Kind::bump_n0;
    // bump parameters
    double center = 0.0;
    double scale = 1.0;
    double amplitude = 1.0;
    // peakon parameters
    double a1 = 1.0;
    double a2 = 0.0;
    // superposition terms
    std::vector<double> weights;
    std::vector<double> positions;

    std::string describe() const;
};

struct SimConfig {
    HelmholtzParams params{1.0};
    double half_width = 16.0;
    std::size_t n_points = 4096;
    InitialData initial;
    double t_end = 1.0;
    Scheme scheme = Scheme::rk4_spectral;
    double cfl_safety = 0.5;
    double blowup_factor = 1000.0;
    double snapshot_dt = 0.0; // 0 -> t_end / 10
    std::size_t diag_every = 1;
    bool track_crest = false;
    double dt_min = 1e-10;
    // optional analytic sup-norm bounds for the blow-up certificate
    // (reported alongside the measured-norm certificate when present)
    double assume_v_inf = 0.0;  // 0 -> none
    double assume_vx_inf = 0.0; // 0 -> none

    double effective_snapshot_dt() const { return snapshot_dt > 0 ? snapshot_dt : t_end / 10.0; }
};

// Initial v on the grid (momentum-type generators go through P2).
Field build_initial_v(const InitialData& init, const GridPtr& grid,
                      const HelmholtzParams& params);

// Parse a key = value document ('#' comments). Unknown keys are an error
// listing them; invalid values name the field and its constraint. In
// initial-data expressions a numeric literal may be suffixed with 'e'
// (Euler's constant), e.g. amplitude=-20e.
SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

// Canonical text form (parse_config round-trips it).
std::string format_config(const SimConfig& config);

const char* to_string(Scheme scheme);

} // namespace pklab
