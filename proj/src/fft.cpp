#include "fft.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace kgbohm {

namespace {
// The FFTW planner is not reentrant.
std::mutex planner_mutex;

fftw_complex* as_fftw(const std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}
}  // namespace

FftPlans::FftPlans(std::size_t n) : n_(n) {
    std::vector<std::complex<double>> in(n), out(n);
    std::lock_guard lock(planner_mutex);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(size, as_fftw(in.data()), as_fftw(out.data()), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(size, as_fftw(in.data()), as_fftw(out.data()), FFTW_BACKWARD, flags);
    if (!forward_ || !backward_) throw std::runtime_error("FFTW planning failed");
}

FftPlans::~FftPlans() {
    std::lock_guard lock(planner_mutex);
    if (forward_) fftw_destroy_plan(forward_);
    if (backward_) fftw_destroy_plan(backward_);
}

void FftPlans::forward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(forward_, as_fftw(in), as_fftw(out));
}

void FftPlans::backward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(backward_, as_fftw(in), as_fftw(out));
}

}  // namespace kgbohm
