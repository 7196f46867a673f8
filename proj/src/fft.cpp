#include "muskat/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace muskat::fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

// FFTW_UNALIGNED lets the cached plan execute on arbitrary caller buffers via
// the new-array interface; FFTW_ESTIMATE keeps planning deterministic.
PlanPair plans_for(int n) {
    std::lock_guard lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(n, real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inv = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.inv) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(n, p);
    return p;
}

} // namespace

std::vector<std::complex<double>> forward(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("fft: need at least 2 samples");
    PlanPair p = plans_for(n);
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(p.fwd, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& bins, int n) {
    if (static_cast<int>(bins.size()) != n / 2 + 1)
        throw std::invalid_argument("fft: bin count does not match n");
    PlanPair p = plans_for(n);
    std::vector<std::complex<double>> in(bins);
    std::vector<double> out(n);
    fftw_execute_dft_c2r(p.inv, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / n;
    for (double& v : out) v *= scale;
    return out;
}

} // namespace muskat::fft
