#pragma once
#include <optional>
#include <vector>

#include "pklab/grid.hpp"
#include "pklab/helmholtz.hpp"

namespace pklab {

// Sup norms of the initial velocity feeding the certificate. Either measured
// on the grid or supplied as analytic bounds.
struct CertificateNorms {
    double v_inf = 0;
    double vx_inf = 0;
};

CertificateNorms measure_norms(const Field& v0);

// b = (16 b0^2 ||v0||_inf)^2 + (8 b0 ||v0x||_inf)^2
double compute_b(const CertificateNorms& norms, const HelmholtzParams& params);
double compute_b(const Field& v0, const HelmholtzParams& params);

// T1 = 1 / (32 max(b0^2, b0^-2) ||v0||_{W^{1,inf}}), sum convention.
// Throws std::domain_error on identically-zero data.
double compute_t1(const CertificateNorms& norms, const HelmholtzParams& params);
double compute_t1(const Field& v0, const HelmholtzParams& params);

// Initial-data level that certifies blow-up:
//   -sqrt(b/2) + sqrt(2b) / (1 - exp(2 sqrt(2b) T1))
// (the denominator is negative, so both terms are negative).
// nullopt when b = 0: the comparison argument then gives no certificate.
std::optional<double> blowup_threshold(double b, double t1);

// Divergence time of f' = -2 f^2 + b from f(0) = n0(x0) < -sqrt(b/2):
//   T2 = log((sqrt2 n0 - sqrt b)/(sqrt2 n0 + sqrt b)) / (2 sqrt(2b))
double compute_t2(double n0_at_x0, double b);

// Closed-form solution of f' = -2 f^2 + b, f(0) = f0, valid for t before
// the divergence time. Throws std::domain_error at/after divergence.
double supersolution_ode(double f0, double b, double t);

struct Witness {
    double x0 = 0;
    double n0_at_x0 = 0;
};

enum class CertVerdict { certified_blowup, no_conclusion };

struct BlowupReport {
    double b = 0;
    double t1 = 0;
    std::optional<double> threshold;
    std::vector<Witness> witnesses; // grid points with n0 below threshold
    std::optional<double> t2;       // from the most negative witness
    CertVerdict verdict = CertVerdict::no_conclusion;
    CertificateNorms norms_used;
};

// Evaluate the certificate for initial momentum n0 (v0 = P2 n0). The second
// overload uses supplied norm bounds instead of measured grid norms.
BlowupReport check_condition(const Field& n0, const HelmholtzParams& params);
BlowupReport check_condition(const Field& n0, const HelmholtzParams& params,
                             const CertificateNorms& bounds);

const char* to_string(CertVerdict verdict);

} // namespace pklab
