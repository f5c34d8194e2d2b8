#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringdelay/sweep.hpp"

namespace ringdelay {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kConsensusColor{0, 0, 255};
inline constexpr Rgb kBoundedColor{255, 215, 0};
inline constexpr Rgb kUnstableColor{200, 0, 0};
inline constexpr Rgb kFailedColor{128, 128, 128};
inline constexpr Rgb kBoundaryColor{255, 255, 255};

[[nodiscard]] Rgb regime_color(const std::optional<Regime>& label) noexcept;

/// Row-major RGB raster, row 0 at the top.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}
    void set(int x, int y, Rgb c);
    [[nodiscard]] Rgb get(int x, int y) const;
};

/// One `scale` x `scale` block per grid node, tau1 to the right and tau2 upward,
/// with the diagram's boundary polylines drawn in white.
[[nodiscard]] Image render_phase_diagram(const PhaseDiagram& diagram, int scale);

/// Binary P6 with maxval 255.
void write_ppm(const std::filesystem::path& path, const Image& image);
[[nodiscard]] std::string encode_ppm(const Image& image);

inline constexpr double kLogPlotFloor = 1e-16;

/// Line plot with a logarithmic vertical axis; values below `floor` are clamped.
[[nodiscard]] std::string svg_log_plot(std::span<const double> times, std::span<const double> values,
                                       const std::string& title, double floor = kLogPlotFloor);

}  // namespace ringdelay
