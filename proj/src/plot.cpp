#include "ringdelay/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ringdelay {

Rgb regime_color(const std::optional<Regime>& label) noexcept {
    if (!label) return kFailedColor;
    switch (*label) {
        case Regime::Consensus: return kConsensusColor;
        case Regime::Bounded: return kBoundedColor;
        case Regime::Unstable: return kUnstableColor;
    }
    return kFailedColor;
}

void Image::set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    const auto at = (static_cast<std::size_t>(y) * width + x) * 3;
    pixels[at] = c.r;
    pixels[at + 1] = c.g;
    pixels[at + 2] = c.b;
}

Rgb Image::get(int x, int y) const {
    const auto at = (static_cast<std::size_t>(y) * width + x) * 3;
    return {pixels[at], pixels[at + 1], pixels[at + 2]};
}

namespace {

void draw_line(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        img.set(x0, y0, c);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

}  // namespace

Image render_phase_diagram(const PhaseDiagram& diagram, int scale) {
    if (scale < 1) throw ConfigError("ppm scale must be >= 1");
    const int res = diagram.resolution();
    Image img(res * scale, res * scale);
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const Rgb c = regime_color(diagram.at(i, j).label);
            const int top = (res - 1 - j) * scale;
            for (int y = 0; y < scale; ++y) {
                for (int x = 0; x < scale; ++x) img.set(i * scale + x, top + y, c);
            }
        }
    }

    // Grid node (i, j) maps to the centre of its block.
    const SweepConfig& cfg = diagram.config;
    const double span1 = cfg.tau1_range.hi - cfg.tau1_range.lo;
    const double span2 = cfg.tau2_range.hi - cfg.tau2_range.lo;
    auto to_pixel = [&](const Point2& p) {
        const double fi = span1 > 0.0 ? (p.x() - cfg.tau1_range.lo) / span1 * (res - 1) : 0.0;
        const double fj = span2 > 0.0 ? (p.y() - cfg.tau2_range.lo) / span2 * (res - 1) : 0.0;
        const int x = static_cast<int>(std::lround((fi + 0.5) * scale - 0.5));
        const int y = static_cast<int>(std::lround((res - 1 - fj + 0.5) * scale - 0.5));
        return std::pair{x, y};
    };
    for (const Polyline& line : diagram.boundary) {
        for (std::size_t s = 0; s + 1 < line.size(); ++s) {
            const auto [x0, y0] = to_pixel(line[s]);
            const auto [x1, y1] = to_pixel(line[s + 1]);
            draw_line(img, x0, y0, x1, y1, kBoundaryColor);
        }
    }
    return img;
}

std::string encode_ppm(const Image& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

void write_ppm(const std::filesystem::path& path, const Image& image) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    const std::string data = encode_ppm(image);
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

std::string svg_log_plot(std::span<const double> times, std::span<const double> values, const std::string& title,
                         double floor) {
    if (times.size() != values.size() || times.empty()) {
        throw ContractViolation("svg_log_plot: times and values must be nonempty and of equal length");
    }
    constexpr double width = 800, height = 500;
    constexpr double left = 80, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    std::vector<double> logs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::isfinite(values[i]) ? std::max(values[i], floor) : floor;
        logs[i] = std::log10(v);
    }
    double lo = std::floor(*std::min_element(logs.begin(), logs.end()));
    double hi = std::ceil(*std::max_element(logs.begin(), logs.end()));
    if (hi <= lo) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double t0 = times.front(), t1 = times.back() > times.front() ? times.back() : times.front() + 1.0;
    auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * plot_w; };
    auto py = [&](double lv) { return top + (hi - lv) / (hi - lo) * plot_h; };

    std::ostringstream os;
    char buf[128];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    os << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
       << "</text>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, plot_w, plot_h);
    os << buf;

    const int decades = static_cast<int>(hi - lo);
    const int stride = std::max(1, decades / 10);
    for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); d += stride) {
        const double y = py(d);
        std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/>\n", left, y,
                      left + plot_w, y);
        os << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%.2f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e%d</text>\n",
                      left - 6, y + 4, d);
        os << buf;
    }
    for (int q = 0; q <= 5; ++q) {
        const double t = t0 + (t1 - t0) * q / 5.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">%g</text>\n",
                      px(t), top + plot_h + 18, t);
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t</text>\n",
                  left + plot_w / 2, height - 10);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"18\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
                  "transform=\"rotate(-90 18 %g)\">V(t)</text>\n",
                  top + plot_h / 2, top + plot_h / 2);
    os << buf;

    const std::size_t stride_pts = std::max<std::size_t>(1, values.size() / 2000);
    os << "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" d=\"";
    bool first = true;
    for (std::size_t i = 0; i < values.size(); i += stride_pts) {
        std::snprintf(buf, sizeof buf, "%s%.2f %.2f ", first ? "M" : "L", px(times[i]), py(logs[i]));
        os << buf;
        first = false;
    }
    if ((values.size() - 1) % stride_pts != 0) {
        std::snprintf(buf, sizeof buf, "L%.2f %.2f", px(times.back()), py(logs.back()));
        os << buf;
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

}  // namespace ringdelay
