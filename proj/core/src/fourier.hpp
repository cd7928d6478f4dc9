#pragma once

#include <complex>

#include <fftw3.h>

namespace lds::detail {

/// In-place complex DFT pair of fixed size with deterministic (FFTW_ESTIMATE)
/// plans. Transforms run on the owned buffer; callers stage data there.
/// Unnormalized: forward . backward = n * identity.
class FourierTransformer {
public:
    explicit FourierTransformer(int n);
    ~FourierTransformer();
    FourierTransformer(const FourierTransformer&) = delete;
    FourierTransformer& operator=(const FourierTransformer&) = delete;

    int size() const { return n_; }
    std::complex<double>* buffer() { return reinterpret_cast<std::complex<double>*>(buf_); }

    void forward();   // exp(-i 2 pi j m / n) convention
    void backward();  // exp(+i 2 pi j m / n)

private:
    int n_ = 0;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

}  // namespace lds::detail
