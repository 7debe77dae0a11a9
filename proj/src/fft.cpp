#include "fft.hpp"

#include <mutex>
#include <stdexcept>

namespace sqz::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

RealFft::RealFft(std::size_t n, Direction dir) : n_(n), dir_(dir), plan_(nullptr) {
    auto real = fftw_alloc<double>(n);
    auto cplx = fftw_alloc<fftw_complex>(n / 2 + 1);
    const int len = static_cast<int>(n);
    std::lock_guard lock(planner_mutex());
    if (dir == Direction::forward)
        plan_ = fftw_plan_dft_r2c_1d(len, real.get(), cplx.get(), FFTW_ESTIMATE);
    else
        plan_ = fftw_plan_dft_c2r_1d(len, cplx.get(), real.get(), FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("FFTW plan creation failed");
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
}

void RealFft::forward(double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(plan_, in, reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(plan_, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace sqz::detail
