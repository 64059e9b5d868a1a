#include "pklab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pklab {

CertificateNorms measure_norms(const Field& v0) {
    return {max_abs(v0), max_abs(derivative(v0))};
}

double compute_b(const CertificateNorms& norms, const HelmholtzParams& params) {
    const double b0 = params.beta0;
    const double s = 16.0 * b0 * b0 * norms.v_inf;
    const double g = 8.0 * b0 * norms.vx_inf;
    return s * s + g * g;
}

double compute_b(const Field& v0, const HelmholtzParams& params) {
    return compute_b(measure_norms(v0), params);
}

double compute_t1(const CertificateNorms& norms, const HelmholtzParams& params) {
    const double w1inf = norms.v_inf + norms.vx_inf;
    if (!(w1inf > 0))
        throw std::domain_error("compute_t1: W^{1,inf} norm of v0 is zero");
    const double b0sq = params.beta0 * params.beta0;
    const double factor = std::max(b0sq, 1.0 / b0sq);
    return 1.0 / (32.0 * factor * w1inf);
}

double compute_t1(const Field& v0, const HelmholtzParams& params) {
    return compute_t1(measure_norms(v0), params);
}

std::optional<double> blowup_threshold(double b, double t1) {
    if (!(b > 0)) return std::nullopt;
    const double root2b = std::sqrt(2.0 * b);
    return -std::sqrt(b / 2.0) + root2b / (1.0 - std::exp(2.0 * root2b * t1));
}

double compute_t2(double n0_at_x0, double b) {
    if (!(b > 0)) throw std::domain_error("compute_t2: b must be positive");
    if (!(n0_at_x0 < -std::sqrt(b / 2.0)))
        throw std::domain_error("compute_t2: need n0(x0) < -sqrt(b/2)");
    const double num = std::numbers::sqrt2 * n0_at_x0 - std::sqrt(b);
    const double den = std::numbers::sqrt2 * n0_at_x0 + std::sqrt(b);
    return std::log(num / den) / (2.0 * std::sqrt(2.0 * b));
}

double supersolution_ode(double f0, double b, double t) {
    if (!(b > 0)) throw std::domain_error("supersolution_ode: b must be positive");
    // f = sqrt(b/2) (1 + C e^{-L t})/(1 - C e^{-L t}), C = (s f0 - r)/(s f0 + r)
    // with s = sqrt2, r = sqrt(b), L = 2 sqrt(2b); cleared of the C division
    // so the equilibrium f0 = -sqrt(b/2) needs no special case. On blow-up
    // branches (f0 < -sqrt(b/2)) the denominator starts at 2r and reaches 0
    // at the divergence time.
    const double r = std::sqrt(b);
    const double p = std::numbers::sqrt2 * f0 + r;
    const double q = std::numbers::sqrt2 * f0 - r;
    const double decay = std::exp(-2.0 * std::sqrt(2.0 * b) * t);
    const double denom = p - q * decay;
    if (!(denom > 0))
        throw std::domain_error("supersolution_ode: t at or past the divergence time");
    return std::sqrt(b / 2.0) * (p + q * decay) / denom;
}

namespace {

BlowupReport evaluate(const Field& n0, const HelmholtzParams& params,
                      const CertificateNorms& norms) {
    BlowupReport report;
    report.norms_used = norms;
    report.b = compute_b(norms, params);
    if (norms.v_inf + norms.vx_inf <= 0 || report.b <= 0) {
        report.verdict = CertVerdict::no_conclusion;
        return report;
    }
    report.t1 = compute_t1(norms, params);
    report.threshold = blowup_threshold(report.b, report.t1);

    double most_negative = 0.0;
    for (std::size_t i = 0; i < n0.size(); ++i) {
        const double value = n0.values[i];
        if (value < *report.threshold) {
            report.witnesses.push_back({n0.grid->x[i], value});
            most_negative = std::min(most_negative, value);
        }
    }
    if (report.witnesses.empty()) {
        report.verdict = CertVerdict::no_conclusion;
        return report;
    }
    report.t2 = compute_t2(most_negative, report.b);
    report.verdict = CertVerdict::certified_blowup;
    return report;
}

} // namespace

BlowupReport check_condition(const Field& n0, const HelmholtzParams& params) {
    const Field v0 = v_from_n(n0, params);
    return evaluate(n0, params, measure_norms(v0));
}

BlowupReport check_condition(const Field& n0, const HelmholtzParams& params,
                             const CertificateNorms& bounds) {
    return evaluate(n0, params, bounds);
}

const char* to_string(CertVerdict verdict) {
    return verdict == CertVerdict::certified_blowup ? "certified_blowup"
                                                    : "no_conclusion";
}

} // namespace pklab
