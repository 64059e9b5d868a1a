#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pklab/besov.hpp"
#include "pklab/fft.hpp"
#include "pklab/timestepper.hpp"

using namespace pklab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

Field random_band_limited(const GridPtr& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    Field f = make_field(g);
    // energy spread over several annuli, all below 2/3 Nyquist
    const std::size_t m_max = g->n_points / 3;
    for (std::size_t m = 1; m < m_max; m += std::max<std::size_t>(1, m_max / 40)) {
        const double a = amp(rng) / std::sqrt(static_cast<double>(m));
        const double ph = phase(rng);
        const double k = g->wavenumber_abs(m);
        for (std::size_t i = 0; i < g->n_points; ++i)
            f.values[i] += a * std::cos(k * g->x[i] + ph);
    }
    return f;
}

} // namespace

TEST_CASE("partition of unity closes on the whole grid") {
    auto g = make_grid(16.0, 1024);
    auto part = build_partition(g);
    for (std::size_t m = 0; m <= g->n_points / 2; ++m) {
        double total = part.chi[m];
        for (const auto& phi : part.phi) total += phi[m];
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
    CHECK(part.phi[0][0] == 0.0); // phi vanishes at k = 0

    // each annulus profile is supported in (3/4) 2^j <= |k| <= (8/3) 2^j
    for (int j = 0; j <= part.j_max; ++j) {
        const double lo = 0.75 * std::pow(2.0, j);
        const double hi = (8.0 / 3.0) * std::pow(2.0, j);
        for (std::size_t m = 0; m <= g->n_points / 2; ++m) {
            const double k = g->wavenumber_abs(m);
            if (part.phi[j][m] != 0.0) {
                CHECK(k >= lo - 1e-12);
                CHECK(k <= hi + 1e-12);
            }
        }
    }
    // non-adjacent annuli are disjoint
    for (std::size_t m = 0; m <= g->n_points / 2; ++m)
        CHECK(part.phi[0][m] * part.phi[2][m] == 0.0);

    CHECK_THROWS_AS(build_partition(make_grid(16.0, 16)), ConfigError);
}

TEST_CASE("dyadic blocks: reconstruction, locality, out-of-range convention") {
    auto g = make_grid(16.0, 1024);
    auto part = build_partition(g);
    std::mt19937 rng(17);
    auto f = random_band_limited(g, rng);

    Field sum = make_field(g);
    for (int j = -1; j <= part.j_max; ++j) sum += dyadic_block(f, j, part);
    CHECK(max_abs(sum - f) < 1e-10 * std::max(1.0, max_abs(f)));

    CHECK(max_abs(dyadic_block(f, -5, part)) == 0.0);
    CHECK(max_abs(dyadic_block(f, part.j_max + 3, part)) == 0.0);

    // a single mode inside the flat core of one annulus appears only there
    const std::size_t m230 = 230; // k ~ 45.2, 2^-5 k ~ 1.41 in [4/3, 3/2]
    const double k = g->wavenumber_abs(m230);
    auto mode = sample(g, [k](double x) { return std::sin(k * x); });
    auto b5 = dyadic_block(mode, 5, part);
    CHECK(max_abs(b5 - mode) < 1e-12);
    for (int j : {-1, 0, 3, 4, 6, 7})
        CHECK(max_abs(dyadic_block(mode, j, part)) < 1e-12);
}

TEST_CASE("besov_norm: single-annulus identity and zero field") {
    auto g = make_grid(16.0, 1024);
    auto part = build_partition(g);
    CHECK(besov_norm(make_field(g), 1.0, 2.0, 2.0, part) == 0.0);

    const std::size_t m230 = 230;
    const double k = g->wavenumber_abs(m230);
    auto mode = sample(g, [k](double x) { return std::sin(k * x); });
    for (double s : {-1.0, 0.0, 1.5}) {
        for (double pp : {1.0, 2.0, kInf}) {
            const double expected = std::pow(2.0, 5.0 * s) * lp_norm(mode, pp);
            CHECK(besov_norm(mode, s, pp, 2.0, part) ==
                  doctest::Approx(expected).epsilon(1e-12));
            CHECK(besov_norm(mode, s, pp, kInf, part) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(besov_norm(mode, 0.0, 0.5, 2.0, part), std::invalid_argument);
    CHECK_THROWS_AS(besov_norm(mode, 0.0, 2.0, 0.9, part), std::invalid_argument);
}

TEST_CASE("B^0_{2,2} is equivalent to L^2 with the partition's constants") {
    auto g = make_grid(16.0, 1024);
    auto part = build_partition(g);
    std::mt19937 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_band_limited(g, rng);
        const double l2 = lp_norm(f, 2.0);
        const double b022 = besov_norm(f, 0.0, 2.0, 2.0, part);
        CHECK(b022 / l2 > 0.7);
        CHECK(b022 / l2 < 1.5);

        // Fourier-side oracle: sum over bins of (chi^2 + sum phi_j^2) |c_k|^2
        auto spec = fft::forward(f.values);
        const double nn = static_cast<double>(g->n_points);
        double oracle_sq = 0.0;
        for (std::size_t m = 0; m <= g->n_points / 2; ++m) {
            double profiles = part.chi[m] * part.chi[m];
            for (const auto& phi : part.phi) profiles += phi[m] * phi[m];
            const double mult = (m == 0 || m == g->n_points / 2) ? 1.0 : 2.0;
            oracle_sq += mult * profiles * std::norm(spec[m] / nn);
        }
        oracle_sq *= 2.0 * g->half_width;
        CHECK(b022 == doctest::Approx(std::sqrt(oracle_sq)).epsilon(1e-10));
    }
}

TEST_CASE("besov_norm: monotone in s for high-frequency data, triangle inequality") {
    auto g = make_grid(16.0, 1024);
    auto part = build_partition(g);

    // all energy at |k| >= 3/2 keeps the chi block empty, so the 2^{js}
    // weights are monotone in s
    auto f = sample(g, [&](double x) {
        return std::sin(g->wavenumber_abs(40) * x) + 0.5 * std::cos(g->wavenumber_abs(200) * x);
    });
    CHECK(max_abs(dyadic_block(f, -1, part)) < 1e-12);
    double prev = 0.0;
    for (double s : {-1.0, 0.0, 1.0, 2.0}) {
        const double norm = besov_norm(f, s, 2.0, 2.0, part);
        CHECK(norm >= prev - 1e-12);
        prev = norm;
    }

    std::mt19937 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_band_limited(g, rng);
        auto b = random_band_limited(g, rng);
        for (double s : {0.0, 1.0})
            CHECK(besov_norm(a + b, s, 2.0, 2.0, part) <=
                  besov_norm(a, s, 2.0, 2.0, part) + besov_norm(b, s, 2.0, 2.0, part) + 1e-10);
    }
}

TEST_CASE("high-frequency block energies grow on the approach to blow-up") {
    SimConfig cfg;
    cfg.params = {1.0};
    cfg.n_points = 2048;
    cfg.initial.kind = InitialData::Kind::bump_n0;
    cfg.initial.scale = 20.0;
    cfg.initial.amplitude = -20.0 * std::numbers::e;
    cfg.t_end = 0.035;
    cfg.scheme = Scheme::rk4_spectral;
    cfg.blowup_factor = 3.0;
    cfg.snapshot_dt = 0.002;
    cfg.diag_every = 8;
    auto r = run(cfg);
    REQUIRE(r.verdict.kind == VerdictKind::blowup_detected);
    REQUIRE(r.snapshots.size() >= 3);

    auto part = build_partition(r.snapshots.front().v.grid);
    auto high_j_energy = [&](const Field& f) {
        const auto energies = block_energies(f, 0.0, 2.0, part);
        double total = 0.0;
        for (int j = 5; j <= part.j_max; ++j) total += energies[static_cast<std::size_t>(j + 1)];
        return total;
    };
    // regularity drains into small scales: the last three pre-detection
    // snapshots carry strictly growing high-annulus energy
    const std::size_t last = r.snapshots.size() - 1;
    for (const Field Snapshot::*field : {&Snapshot::v, &Snapshot::n}) {
        const double e0 = high_j_energy(r.snapshots[last - 2].*field);
        const double e1 = high_j_energy(r.snapshots[last - 1].*field);
        const double e2 = high_j_energy(r.snapshots[last].*field);
        CHECK(e1 > e0);
        CHECK(e2 > e1);
    }
}
