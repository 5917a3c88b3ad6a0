#pragma once

// Direct-summation kernels over momentum nodes. Each comes in a serial
// reference form and an OpenMP form parallel over evaluation points; the two
// are required to agree bit-for-bit per point (same summation order).

#include <span>

#include "kgbohm/wavepacket.hpp"

namespace kgbohm::kernels {

struct CurrentSample {
    double value;         // Re J
    double imag_residue;  // Im J, zero for a Hermitian kernel up to rounding
};

namespace serial {
void synthesize_points(const SpectralAmplitudes& g, double t, TimeDerivative order, std::span<const double> xs,
                       std::span<cplx> out);
void current_points(const SpectralAmplitudes& g, double t, std::span<const double> xs,
                    std::span<CurrentSample> out);
}  // namespace serial

namespace omp {
void synthesize_points(const SpectralAmplitudes& g, double t, TimeDerivative order, std::span<const double> xs,
                       std::span<cplx> out);
void current_points(const SpectralAmplitudes& g, double t, std::span<const double> xs,
                    std::span<CurrentSample> out);
}  // namespace omp

/// Number of threads the OpenMP kernels will use (1 without OpenMP).
int max_threads();

}  // namespace kgbohm::kernels
