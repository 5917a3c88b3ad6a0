#include "kgbohm/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kgbohm {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

FieldSlice velocity_field(const FieldSlice& density, const FieldSlice& current, double eps_rel) {
    if (density.t != current.t) throw std::invalid_argument("density and current slices have different times");
    if (density.grids != current.grids) throw std::invalid_argument("density and current slices use different grids");
    if (density.density.size() != current.current.size() || density.density.empty())
        throw std::invalid_argument("density and current arrays must be nonempty and of equal length");

    FieldSlice out;
    out.t = density.t;
    out.grids = density.grids;
    out.density = density.density;
    out.current = current.current;
    const std::size_t n = out.density.size();
    out.velocity.assign(n, std::numeric_limits<double>::quiet_NaN());
    out.mask.assign(n, NodeMask::masked_low_density);

    const double threshold = eps_rel * max_abs(out.density);
    for (std::size_t j = 0; j < n; ++j) {
        const double rho = out.density[j];
        if (std::abs(rho) >= threshold && rho != 0.0) {
            out.velocity[j] = out.current[j] / rho;
            out.mask[j] = NodeMask::valid;
        }
    }
    return out;
}

}  // namespace kgbohm
