#include "pklab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace pklab::fft {

namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// Plans are created once per transform size and shared; fftw_execute_dft_*
// on fresh arrays is thread-safe, planning is not, hence the mutex.
// FFTW_UNALIGNED lets the plans run on plain std::vector storage.
PlanPair& plans_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PlanPair p;
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    auto* cp = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), cp, flags);
    p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), cp, real.data(), flags);
    if (!p.r2c || !p.c2r) throw std::runtime_error("fftw planning failed");
    return cache.emplace(n, p).first->second;
}

} // namespace

Spectrum forward(std::span<const double> samples) {
    const std::size_t n = samples.size();
    std::vector<double> in(samples.begin(), samples.end());
    Spectrum out(n / 2 + 1);
    fftw_execute_dft_r2c(plans_for(n).r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse(const Spectrum& spectrum, std::size_t n) {
    if (spectrum.size() != n / 2 + 1)
        throw std::invalid_argument("fft::inverse: spectrum size != n/2+1");
    Spectrum in = spectrum; // c2r clobbers its input
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans_for(n).c2r,
                         reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

} // namespace pklab::fft
