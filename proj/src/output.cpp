#include "kgbohm/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace kgbohm::output {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

const std::vector<double>& column_of(const FieldSlice& s, FieldColumn c) {
    switch (c) {
        case FieldColumn::density: return s.density;
        case FieldColumn::current: return s.current;
        case FieldColumn::velocity: return s.velocity;
    }
    return s.density;
}

using Rgb = std::array<std::uint8_t, 3>;

std::uint8_t channel(double v) { return static_cast<std::uint8_t>(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5); }

// blue - white - red
Rgb diverging(double u) {
    u = std::clamp(u, -1.0, 1.0);
    if (u < 0.0) return {channel(1.0 + u), channel(1.0 + u), 255};
    return {255, channel(1.0 - u), channel(1.0 - u)};
}

// black - purple - orange - yellow
Rgb sequential(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return {channel(std::sqrt(u) * 1.1), channel(u * u), channel(std::sin(u * 3.14159265358979) * 0.8 + 0.1 * u)};
}

class Canvas {
public:
    Canvas(std::size_t w, std::size_t h) : w_(w), h_(h), px_(w * h, Rgb{255, 255, 255}) {}
    void set(long x, long y, Rgb c) {
        if (x < 0 || y < 0 || x >= static_cast<long>(w_) || y >= static_cast<long>(h_)) return;
        px_[static_cast<std::size_t>(y) * w_ + static_cast<std::size_t>(x)] = c;
    }
    void line(long x0, long y0, long x1, long y1, Rgb c) {
        const long dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        const long dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        long err = dx + dy;
        while (true) {
            set(x0, y0, c);
            if (x0 == x1 && y0 == y1) break;
            const long e2 = 2 * err;
            if (e2 >= dy) { err += dy; x0 += sx; }
            if (e2 <= dx) { err += dx; y0 += sy; }
        }
    }
    void save(const std::filesystem::path& path) const {
        auto out = open_out(path);
        out << "P6\n" << w_ << " " << h_ << "\n255\n";
        for (const auto& p : px_) out.write(reinterpret_cast<const char*>(p.data()), 3);
    }

private:
    std::size_t w_, h_;
    std::vector<Rgb> px_;
};

Rgb palette(std::size_t i) {
    static constexpr std::array<Rgb, 8> colors{{{31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40},
                                                {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {23, 190, 207}}};
    return colors[i % colors.size()];
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_table(const std::filesystem::path& path, const FieldSlice& slice, FieldColumn column) {
    const auto& values = column_of(slice, column);
    if (values.empty()) throw std::invalid_argument("slice has no data for the requested column");
    auto out = open_out(path);
    out << "t x value mask\n";
    const auto& x = slice.grids->x();
    const bool has_mask = !slice.mask.empty();
    const std::string t = format_number(slice.t);
    for (std::size_t j = 0; j < values.size(); ++j) {
        const bool masked = has_mask && slice.masked(j);
        out << t << ' ' << format_number(x[j]) << ' ' << (masked ? std::string("nan") : format_number(values[j])) << ' '
            << (masked ? 1 : 0) << '\n';
    }
}

void write_trajectory_table(const std::filesystem::path& path, std::span<const Trajectory> trajectories) {
    auto out = open_out(path);
    out << "id t x v\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        for (const auto& s : trajectories[i].samples)
            out << i << ' ' << format_number(s.t) << ' ' << format_number(s.x) << ' ' << format_number(s.v) << '\n';
    }
}

void write_superluminal_table(const std::filesystem::path& path, const SuperluminalReport& report) {
    auto out = open_out(path);
    out << "t x v\n";
    for (const auto& c : report.cells)
        out << format_number(c.t) << ' ' << format_number(c.x) << ' ' << format_number(c.v) << '\n';
}

void write_heatmap(const std::filesystem::path& path, std::span<const FieldSlice> slices, FieldColumn column,
                   double x_lo, double x_hi, double range, bool signed_values) {
    if (slices.empty()) return;
    const auto& x = slices.front().grids->x();
    std::size_t first = 0, last = x.size();
    while (first < x.size() && x[first] < x_lo) ++first;
    while (last > first && x[last - 1] > x_hi) --last;
    if (last <= first) throw std::invalid_argument("heatmap x range is empty");

    constexpr std::size_t row_height = 4;
    Canvas canvas(last - first, slices.size() * row_height);
    for (std::size_t r = 0; r < slices.size(); ++r) {
        const auto& s = slices[r];
        const auto& values = column_of(s, column);
        for (std::size_t j = first; j < last; ++j) {
            Rgb color{128, 128, 128};
            if (s.mask.empty() || !s.masked(j)) {
                const double u = range > 0.0 ? values[j] / range : 0.0;
                color = signed_values ? diverging(u) : sequential(u);
            }
            for (std::size_t k = 0; k < row_height; ++k)
                canvas.set(static_cast<long>(j - first), static_cast<long>(r * row_height + k), color);
        }
    }
    canvas.save(path);
}

void write_trajectory_plot(const std::filesystem::path& path, std::span<const Trajectory> trajectories,
                           bool plot_velocity) {
    constexpr long width = 640, height = 480, margin = 20;
    double t_max = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const auto& tr : trajectories) {
        for (const auto& s : tr.samples) {
            const double y = plot_velocity ? s.v : s.x;
            t_max = std::max(t_max, s.t);
            y_lo = first ? y : std::min(y_lo, y);
            y_hi = first ? y : std::max(y_hi, y);
            first = false;
        }
    }
    if (plot_velocity) {
        y_lo = std::min(y_lo, -1.0);
        y_hi = std::max(y_hi, 1.0);
    }
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    if (t_max <= 0.0) t_max = 1.0;

    Canvas canvas(width, height);
    auto px = [&](double t) { return margin + static_cast<long>(std::lround(t / t_max * (width - 2 * margin))); };
    auto py = [&](double y) {
        return height - margin - static_cast<long>(std::lround((y - y_lo) / (y_hi - y_lo) * (height - 2 * margin)));
    };
    const Rgb axis{0, 0, 0};
    canvas.line(margin, height - margin, width - margin, height - margin, axis);
    canvas.line(margin, margin, margin, height - margin, axis);
    if (plot_velocity) {
        const Rgb light{180, 180, 180};
        canvas.line(margin, py(1.0), width - margin, py(1.0), light);
        canvas.line(margin, py(-1.0), width - margin, py(-1.0), light);
    }
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const auto& s = trajectories[i].samples;
        for (std::size_t k = 1; k < s.size(); ++k) {
            const double y0 = plot_velocity ? s[k - 1].v : s[k - 1].x;
            const double y1 = plot_velocity ? s[k].v : s[k].x;
            canvas.line(px(s[k - 1].t), py(y0), px(s[k].t), py(y1), palette(i));
        }
    }
    canvas.save(path);
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

}  // namespace kgbohm::output
