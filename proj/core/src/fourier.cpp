#include "fourier.hpp"

#include <stdexcept>

namespace lds::detail {

FourierTransformer::FourierTransformer(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("transform size must be positive");
    buf_ = fftw_alloc_complex(static_cast<size_t>(n));
    if (!buf_) throw std::bad_alloc();
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

FourierTransformer::~FourierTransformer() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
    if (buf_) fftw_free(buf_);
}

void FourierTransformer::forward() { fftw_execute(fwd_); }
void FourierTransformer::backward() { fftw_execute(bwd_); }

}  // namespace lds::detail
