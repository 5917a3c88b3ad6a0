#pragma once

#include <cstddef>

namespace kgbohm {

struct SimulationParams {
    double hbar{1.0};
    double c{1.0};
    double m{1.0};

    double p0{0.0};     // mean momentum
    double x0{0.0};     // mean position
    double sigma{1.0};  // std deviation of |phi(x,0)|^2

    std::size_t n_modes{1024};
    double x_min{-40.0};
    double x_max{88.0};  // exclusive (periodic grid)

    double t_final{2.0};
    double dt_out{0.1};

    double rest_energy() const { return m * c * c; }
    double sigma_p() const { return hbar / (2.0 * sigma); }

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

bool is_power_of_two(std::size_t n);

}  // namespace kgbohm
