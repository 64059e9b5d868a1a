#pragma once
#include "pklab/grid.hpp"
#include "pklab/helmholtz.hpp"

namespace pklab {

struct StateV {
    double t = 0;
    Field v;
    HelmholtzParams params;
};

// How v_x is formed inside the RHS: spectral (with 2/3-rule dealiasing of
// the quadratic products) or first-order upwind against the transport wind.
enum class DerivMode { spectral, upwind };

// Transport wind of the system, 4*(v_x + 2*beta0*v). The derivative is the
// centered difference, which the one-sided slopes bound even at a peakon
// crest, so CFL estimates stay sharp on kinked data.
Field transport_wind(const Field& v, const HelmholtzParams& params);

// d_t v of the velocity form:
//   v_t = (8 b v + 2 v_x) v_x - 8 b^2 v^2
//         + 8 b   P1(2 b^2 v^2 + v_x^2)
//         + 8 b^2 P2(4 b^2 v^2 - v_x^2),       b = beta0
Field rhs_v(const StateV& state, DerivMode mode = DerivMode::spectral);

// d_t n of the conservative form: 4 * d_x [ n (v_x + 2 b v) ]  with
// v = P2(n). Spectral throughout; used as the consistency oracle.
Field rhs_n(const Field& n, const HelmholtzParams& params);

// || n_from_v(rhs_v(v)) - rhs_n(n_from_v(v)) ||_inf / max(1, ||n||_inf).
// Vanishes (to spectral accuracy) iff both forms encode the same dynamics;
// this is the arbiter for the sign conventions of the velocity form.
double consistency_residual(const Field& v, const HelmholtzParams& params);

} // namespace pklab
