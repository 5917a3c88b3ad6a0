#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>

namespace kgbohm {

/// Forward/backward complex FFTW plans of one size. Planned with
/// FFTW_UNALIGNED so that execution through the new-array interface is
/// valid on any std::vector storage and safe to call concurrently.
class FftPlans {
public:
    explicit FftPlans(std::size_t n);
    ~FftPlans();
    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    std::size_t size() const { return n_; }
    // out_j = sum_k in_k exp(-2 pi i j k / N)
    void forward(const std::complex<double>* in, std::complex<double>* out) const;
    // out_j = sum_k in_k exp(+2 pi i j k / N)
    void backward(const std::complex<double>* in, std::complex<double>* out) const;

private:
    std::size_t n_;
    fftw_plan forward_{nullptr};
    fftw_plan backward_{nullptr};
};

}  // namespace kgbohm
