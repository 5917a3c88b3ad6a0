#include "kgbohm/params.hpp"

#include <cmath>
#include <string>

#include "kgbohm/errors.hpp"

namespace kgbohm {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void SimulationParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(hbar)) throw ConfigError("hbar must be > 0");
    if (!positive(c)) throw ConfigError("c must be > 0");
    if (!positive(m)) throw ConfigError("m must be > 0");
    if (!positive(sigma)) throw ConfigError("sigma must be > 0");
    if (!std::isfinite(p0) || !std::isfinite(x0)) throw ConfigError("p0 and x0 must be finite");
    if (!is_power_of_two(n_modes) || n_modes < 64)
        throw ConfigError("n_modes must be a power of two >= 64, got " + std::to_string(n_modes));
    if (!(x_max > x_min)) throw ConfigError("x_span must be nondegenerate");
    if (x0 - 6.0 * sigma < x_min || x0 + 6.0 * sigma >= x_max)
        throw ConfigError("x_span must contain x0 +/- 6 sigma");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");
    if (!positive(dt_out)) throw ConfigError("dt_out must be > 0");
}

}  // namespace kgbohm
