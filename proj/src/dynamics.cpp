#include "pklab/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pklab {

namespace {

Field filtered(const Field& f, DerivMode mode) {
    return mode == DerivMode::spectral ? dealias_two_thirds(f) : f;
}

} // namespace

Field transport_wind(const Field& v, const HelmholtzParams& params) {
    Field vx = centered_derivative(v);
    Field out = make_field(v.grid);
    for (std::size_t i = 0; i < v.size(); ++i)
        out.values[i] = 4.0 * (vx.values[i] + 2.0 * params.beta0 * v.values[i]);
    return out;
}

Field rhs_v(const StateV& state, DerivMode mode) {
    const Field& v = state.v;
    const double b = state.params.beta0;
    const double b2 = b * b;

    Field vx = (mode == DerivMode::spectral)
                   ? derivative(v)
                   : upwind_derivative(v, transport_wind(v, state.params));

    const std::size_t n = v.size();
    Field adv = make_field(v.grid);   // (8 b v + 2 v_x) v_x
    Field vsq = make_field(v.grid);   // v^2
    Field q1 = make_field(v.grid);    // 2 b^2 v^2 + v_x^2
    Field q2 = make_field(v.grid);    // 4 b^2 v^2 - v_x^2
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v.values[i];
        const double di = vx.values[i];
        adv.values[i] = (8.0 * b * vi + 2.0 * di) * di;
        vsq.values[i] = vi * vi;
        q1.values[i] = 2.0 * b2 * vi * vi + di * di;
        q2.values[i] = 4.0 * b2 * vi * vi - di * di;
    }
    adv = filtered(adv, mode);
    vsq = filtered(vsq, mode);
    Field p1q1 = apply_p1(filtered(q1, mode), state.params);
    Field p2q2 = apply_p2(filtered(q2, mode), state.params);

    Field out = make_field(v.grid);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] = adv.values[i] - 8.0 * b2 * vsq.values[i] +
                        8.0 * b * p1q1.values[i] + 8.0 * b2 * p2q2.values[i];
    return out;
}

Field rhs_n(const Field& n, const HelmholtzParams& params) {
    const Field v = v_from_n(n, params);
    const Field vx = derivative(v);
    Field flux = make_field(n.grid);
    for (std::size_t i = 0; i < n.size(); ++i)
        flux.values[i] =
            4.0 * n.values[i] * (vx.values[i] + 2.0 * params.beta0 * v.values[i]);
    return derivative(dealias_two_thirds(flux));
}

double consistency_residual(const Field& v, const HelmholtzParams& params) {
    const Field n = n_from_v(v, params);
    const Field lhs = n_from_v(rhs_v(StateV{0.0, v, params}), params);
    const Field rhs = rhs_n(n, params);
    double num = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        num = std::max(num, std::abs(lhs.values[i] - rhs.values[i]));
    return num / std::max(1.0, max_abs(n));
}

} // namespace pklab
