#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgbohm/grids.hpp"

namespace kgbohm {

enum class NodeMask : std::uint8_t { valid = 0, masked_low_density = 1 };

/// Real-valued samples on the position grid at one time. Any of density,
/// current, velocity may be empty when the producing operation does not
/// compute it; velocity, when present, comes with a mask of equal length.
/// Masked nodes hold NaN in `velocity`.
struct FieldSlice {
    double t{0.0};
    GridsPtr grids;
    std::vector<double> density;
    std::vector<double> current;
    std::vector<double> velocity;
    std::vector<NodeMask> mask;

    bool masked(std::size_t j) const { return mask[j] != NodeMask::valid; }
};

/// Two-component canonical field (phi, chi) on the position grid.
struct SpinorField {
    double t{0.0};
    GridsPtr grids;
    std::vector<cplx> phi;
    std::vector<cplx> chi;
};

/// Single-component field on the position grid.
struct ScalarField {
    double t{0.0};
    GridsPtr grids;
    std::vector<cplx> values;
};

/// v = current / density where |density| >= eps_rel * max|density|, masked elsewhere.
/// Throws std::invalid_argument if the slices disagree on time or grid.
FieldSlice velocity_field(const FieldSlice& density, const FieldSlice& current, double eps_rel);

double max_abs(std::span<const double> v);

}  // namespace kgbohm
