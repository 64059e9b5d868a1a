#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pklab/blowup.hpp"
#include "pklab/peakon.hpp"

using namespace pklab;

namespace {
constexpr double kE = std::numbers::e;

// forward-Euler-free oracle: classic RK4 on f' = -2 f^2 + b
double rk4_ode(double f0, double b, double t_end, int steps) {
    double f = f0, t = 0.0, dt = t_end / steps;
    auto rhs = [b](double y) { return -2.0 * y * y + b; };
    for (int i = 0; i < steps; ++i) {
        const double k1 = rhs(f);
        const double k2 = rhs(f + 0.5 * dt * k1);
        const double k3 = rhs(f + 0.5 * dt * k2);
        const double k4 = rhs(f + dt * k3);
        f += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += dt;
        if (!std::isfinite(f)) break;
    }
    return f;
}

} // namespace

TEST_CASE("compute_b: zero data, the bundled datum's bounds, sign symmetry") {
    auto g = make_grid(16.0, 1024);
    CHECK(compute_b(make_field(g), {1.0}) == 0.0);

    // analytic bounds e/8, e/4 reproduce b = 8 e^2 exactly
    const CertificateNorms bounds{kE / 8.0, kE / 4.0};
    CHECK(compute_b(bounds, {1.0}) == doctest::Approx(8.0 * kE * kE).epsilon(1e-14));
    CHECK(compute_b(bounds, {-1.0}) == doctest::Approx(8.0 * kE * kE).epsilon(1e-14));
}

TEST_CASE("compute_t1: the bundled datum, parity in beta0, reciprocal scaling") {
    const CertificateNorms bounds{kE / 8.0, kE / 4.0};
    const double t1 = compute_t1(bounds, {1.0});
    CHECK(t1 == doctest::Approx(1.0 / (12.0 * kE)).epsilon(1e-14));
    CHECK(compute_t1(bounds, {-1.0}) == doctest::Approx(t1).epsilon(1e-14));

    const CertificateNorms doubled{kE / 4.0, kE / 2.0};
    CHECK(compute_t1(doubled, {1.0}) == doctest::Approx(0.5 * t1).epsilon(1e-14));

    CHECK_THROWS_AS(compute_t1(CertificateNorms{0.0, 0.0}, {1.0}), std::domain_error);
}

TEST_CASE("blowup_threshold: bundled numbers and limits") {
    const double b = 8.0 * kE * kE;
    const double t1 = 1.0 / (12.0 * kE);
    // exponent 2 sqrt(2b) T1 = 8e/(12e) = 2/3; threshold ~ -16.909
    auto th = blowup_threshold(b, t1);
    REQUIRE(th.has_value());
    const double expected = -2.0 * kE - 4.0 * kE / std::expm1(2.0 / 3.0);
    CHECK(*th == doctest::Approx(expected).epsilon(1e-12));
    CHECK(*th == doctest::Approx(-16.9093).epsilon(1e-4));
    CHECK(-20.0 < *th); // the bundled datum is certified

    // T1 -> infinity: threshold approaches -sqrt(b/2)
    auto deep = blowup_threshold(b, 1e6);
    CHECK(*deep == doctest::Approx(-std::sqrt(b / 2.0)).epsilon(1e-9));

    CHECK_FALSE(blowup_threshold(0.0, t1).has_value());
}

TEST_CASE("compute_t2: closed form vs integrated ODE divergence") {
    const double b = 8.0 * kE * kE;
    const double t2 = compute_t2(-20.0, b);
    CHECK(t2 == doctest::Approx(0.025645).epsilon(1e-3));
    CHECK(t2 < 1.0 / (12.0 * kE)); // T2 < T1

    // RK4 oracle: bracket the divergence time of f' = -2f^2 + b, f(0) = -20
    double lo = 0.0, hi = 2.0 * t2;
    for (int iter = 0; iter < 40; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f = rk4_ode(-20.0, b, mid, 40000);
        if (std::isfinite(f) && f > -1e8) lo = mid;
        else hi = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - t2) < 1e-4);

    // monotonicity: deeper initial data diverges sooner
    CHECK(compute_t2(-1e6, b) < 1e-5);
    CHECK(compute_t2(-40.0, b) < t2);
    CHECK_THROWS_AS(compute_t2(-1.0, b), std::domain_error); // above -sqrt(b/2)
    CHECK_THROWS_AS(compute_t2(-20.0, 0.0), std::domain_error);
}

TEST_CASE("supersolution_ode: equilibrium, tanh solution, ODE residual") {
    // f0 at the stable equilibrium stays put
    const double b = 3.7;
    const double eq = std::sqrt(b / 2.0);
    for (double t : {0.0, 0.5, 2.0})
        CHECK(supersolution_ode(eq, b, t) == doctest::Approx(eq).epsilon(1e-12));

    // f' = -2 f^2 + 2 from 0 is tanh(2t)
    for (double t : {0.1, 0.7, 1.5})
        CHECK(supersolution_ode(0.0, 2.0, t) == doctest::Approx(std::tanh(2.0 * t)).epsilon(1e-12));

    // finite-difference residual of the closed form
    for (double f0 : {-1.0, 0.4, 2.0}) {
        const double h = 1e-6;
        for (double t : {0.05, 0.2}) {
            const double fp = supersolution_ode(f0, b, t + h);
            const double fm = supersolution_ode(f0, b, t - h);
            const double f = supersolution_ode(f0, b, t);
            const double resid = (fp - fm) / (2 * h) - (-2.0 * f * f + b);
            CHECK(std::abs(resid) < 1e-8 * (std::abs(f) + b));
        }
    }

    // past the divergence time of a blow-up branch
    const double bb = 8.0 * kE * kE;
    const double t2 = compute_t2(-20.0, bb);
    CHECK_THROWS_AS(supersolution_ode(-20.0, bb, t2 * 1.01), std::domain_error);
}

TEST_CASE("check_condition: zero, certified and nonnegative data") {
    auto g = make_grid(16.0, 4096);
    const HelmholtzParams p{1.0};

    auto zero_report = check_condition(make_field(g), p);
    CHECK(zero_report.verdict == CertVerdict::no_conclusion);
    CHECK(zero_report.witnesses.empty());
    CHECK_FALSE(zero_report.t2.has_value());

    // the bundled blow-up datum, with the analytic norm bounds
    auto n0 = sample(g, [](double x) { return bump(x, 0.0, 20.0, -20.0 * kE); });
    auto certified = check_condition(n0, p, CertificateNorms{kE / 8.0, kE / 4.0});
    CHECK(certified.verdict == CertVerdict::certified_blowup);
    REQUIRE_FALSE(certified.witnesses.empty());
    REQUIRE(certified.t2.has_value());
    CHECK(*certified.t2 < certified.t1); // T2 < T1
    CHECK(certified.t1 == doctest::Approx(1.0 / (12.0 * kE)).epsilon(1e-12));
    // the deepest witness sits at the origin where n0 = -20
    double deepest = 0.0, deepest_x = 1.0;
    for (const auto& w : certified.witnesses)
        if (w.n0_at_x0 < deepest) {
            deepest = w.n0_at_x0;
            deepest_x = w.x0;
        }
    CHECK(deepest == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK(deepest_x == doctest::Approx(0.0).epsilon(1e-12));

    // measured-norm route also certifies (measured norms are below the bounds)
    auto measured = check_condition(n0, p);
    CHECK(measured.verdict == CertVerdict::certified_blowup);
    CHECK(measured.norms_used.v_inf <= kE / 8.0);
    CHECK(measured.t1 >= certified.t1);

    // nonnegative data: threshold is negative, no witness
    auto pos = sample(g, [](double x) { return bump(x, 0.0, 1.0, 1.0); });
    auto none = check_condition(pos, p);
    CHECK(none.verdict == CertVerdict::no_conclusion);
    CHECK(none.witnesses.empty());
}
