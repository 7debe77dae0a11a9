#pragma once

// Thin RAII wrapper over FFTW's real-to-complex and complex-to-real plans.
// Plans are created under a global lock (FFTW's planner is not
// thread-safe); executing a plan on caller-owned buffers is.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>

namespace sqz::detail {

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <typename T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
    void* p = fftw_malloc(sizeof(T) * n);
    if (!p) throw std::bad_alloc();
    return FftwBuffer<T>(static_cast<T*>(p));
}

class RealFft {
public:
    enum class Direction { forward, inverse };

    RealFft(std::size_t n, Direction dir);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const noexcept { return n_; }

    // in: n reals, out: n/2+1 complex. Buffers must come from fftw_alloc.
    void forward(double* in, std::complex<double>* out) const;
    // in: n/2+1 complex (overwritten), out: n reals. Unnormalized.
    void inverse(std::complex<double>* in, double* out) const;

private:
    std::size_t n_;
    Direction dir_;
    fftw_plan plan_;
};

}  // namespace sqz::detail
