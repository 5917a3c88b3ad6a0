#pragma once

// Data-product writers. Tables are space-delimited text with a header line
// and 17 significant digits; images are binary PPM (P6).

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kgbohm/bohm.hpp"
#include "kgbohm/field.hpp"

namespace kgbohm::output {

enum class FieldColumn { density, current, velocity };

/// Header "t x value mask", one row per grid node. mask is 0 (valid) or 1
/// (masked-low-density); masked velocity values are written as nan.
void write_field_table(const std::filesystem::path& path, const FieldSlice& slice, FieldColumn column);

/// Header "id t x v".
void write_trajectory_table(const std::filesystem::path& path, std::span<const Trajectory> trajectories);

/// Header "t x v".
void write_superluminal_table(const std::filesystem::path& path, const SuperluminalReport& report);

/// Rows are slices (time increasing downward), columns are grid nodes restricted
/// to [x_lo, x_hi]. Values are mapped on a diverging palette over
/// [-range, range] when `signed_values`, else a sequential palette over [0, range].
/// Masked nodes are drawn gray.
void write_heatmap(const std::filesystem::path& path, std::span<const FieldSlice> slices, FieldColumn column,
                   double x_lo, double x_hi, double range, bool signed_values);

/// One polyline per trajectory; horizontal axis t, vertical axis x (or v).
void write_trajectory_plot(const std::filesystem::path& path, std::span<const Trajectory> trajectories,
                           bool plot_velocity);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// "%.17g" formatting used by every table.
std::string format_number(double v);

}  // namespace kgbohm::output
