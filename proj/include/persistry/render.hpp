#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "persistry/error.hpp"
#include "persistry/persistence.hpp"

namespace persistry {

enum class BarOrder { ByDeathAsc, ByBirthAsc };

struct RenderOptions {
    int width_px = 640;
    int height_px = 0;  ///< 0: grow with the number of bars
    std::optional<double> axis_max;  ///< nullopt: fit the data
    int dim = 0;
    BarOrder sort = BarOrder::ByDeathAsc;
    bool infinite_marker = true;
};

namespace detail {

inline std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

/// Bars in display order; equal keys keep their barcode order.
inline std::vector<PersistenceInterval> ordered_bars(const std::vector<PersistenceInterval>& bars, BarOrder order) {
    std::vector<PersistenceInterval> out = bars;
    std::stable_sort(out.begin(), out.end(), [order](const PersistenceInterval& a, const PersistenceInterval& b) {
        return order == BarOrder::ByDeathAsc ? a.death < b.death : a.birth < b.birth;
    });
    return out;
}

/// Auto axis: 10% past the largest finite endpoint, leaving room for infinite bars.
inline double auto_axis_max(const Barcode& barcode) {
    double top = 0.0;
    for (int dim = 0; dim <= 1; ++dim)
        for (const auto& bar : barcode.intervals(dim)) top = std::max({top, bar.birth, bar.infinite() ? 0.0 : bar.death});
    return top > 0.0 ? 1.1 * top : 1.0;
}

}  // namespace detail

/// SVG 1.1 barcode for one homology dimension: one horizontal bar per
/// interval, x proportional to the filtration value on [0, axis_max],
/// infinite bars run to the right edge and end in an arrow.
inline std::string render_barcode_svg(const Barcode& barcode, const RenderOptions& options = {}) {
    if (options.width_px <= 0 || options.height_px < 0) throw InvalidArgument("render size must be positive");
    const auto bars = detail::ordered_bars(barcode.intervals(options.dim), options.sort);
    const double axis_max = options.axis_max.value_or(detail::auto_axis_max(barcode));
    if (!(axis_max > 0.0)) throw InvalidArgument("axis_max must be positive");

    constexpr double margin_left = 0.0;
    constexpr double margin_top = 24.0;
    constexpr double axis_band = 28.0;
    constexpr double row = 12.0;
    const double plot_width = options.width_px;
    const int height = options.height_px > 0 ? options.height_px
                                             : static_cast<int>(margin_top + axis_band + row * std::max<std::size_t>(bars.size(), 1));
    const double plot_height = height - margin_top - axis_band;
    const double pitch = bars.empty() ? row : plot_height / static_cast<double>(bars.size());
    auto x_of = [&](double v) { return margin_left + plot_width * std::min(v, axis_max) / axis_max; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(options.width_px) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(options.width_px) + " " +
           std::to_string(height) + "\">\n";
    svg += "<title>dimension " + std::to_string(options.dim) + " barcode</title>\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width_px) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"4\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">Dimension " +
           std::to_string(options.dim) + "</text>\n";

    svg += "<g class=\"bars\" fill=\"#1f4e9c\">\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& bar = bars[i];
        const double y = margin_top + pitch * static_cast<double>(i);
        const double h = std::max(1.0, pitch * 0.7);
        const double x0 = x_of(bar.birth);
        const double x1 = bar.infinite() ? plot_width : x_of(bar.death);
        svg += "<rect x=\"" + detail::fixed(x0) + "\" y=\"" + detail::fixed(y) + "\" width=\"" +
               detail::fixed(x1 - x0) + "\" height=\"" + detail::fixed(h) + "\" data-birth=\"" +
               detail::fixed(bar.birth, 6) + "\" data-death=\"" +
               (bar.infinite() ? std::string("inf") : detail::fixed(bar.death, 6)) + "\"/>\n";
        if (bar.infinite() && options.infinite_marker) {
            const double mid = y + h / 2.0;
            svg += "<polygon class=\"infinite\" points=\"" + detail::fixed(plot_width - 8.0) + "," +
                   detail::fixed(mid - h) + " " + detail::fixed(plot_width) + "," + detail::fixed(mid) + " " +
                   detail::fixed(plot_width - 8.0) + "," + detail::fixed(mid + h) + "\" fill=\"#c0392b\"/>\n";
        }
    }
    svg += "</g>\n";

    const double axis_y = height - axis_band + 6.0;
    svg += "<g class=\"axis\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"10\">\n";
    svg += "<line x1=\"0\" y1=\"" + detail::fixed(axis_y) + "\" x2=\"" + detail::fixed(plot_width) + "\" y2=\"" +
           detail::fixed(axis_y) + "\"/>\n";
    constexpr int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double value = axis_max * t / ticks;
        const double x = x_of(value);
        svg += "<line x1=\"" + detail::fixed(x) + "\" y1=\"" + detail::fixed(axis_y) + "\" x2=\"" + detail::fixed(x) +
               "\" y2=\"" + detail::fixed(axis_y + 4.0) + "\"/>\n";
        const char* anchor = t == 0 ? "start" : (t == ticks ? "end" : "middle");
        svg += "<text x=\"" + detail::fixed(x) + "\" y=\"" + detail::fixed(axis_y + 16.0) + "\" text-anchor=\"" +
               anchor + "\" stroke=\"none\">" + detail::fixed(value, 1) + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

/// Terminal view: one line per bar, dashes proportional to the interval on
/// [0, axis_max] over `columns` characters, then the numeric interval.
inline std::vector<std::string> render_text(const Barcode& barcode, int dim, int columns = 60,
                                            std::optional<double> axis_max = std::nullopt,
                                            BarOrder order = BarOrder::ByDeathAsc) {
    if (columns < 20) throw InvalidArgument("render_text needs at least 20 columns");
    const double top = axis_max.value_or(detail::auto_axis_max(barcode));
    if (!(top > 0.0)) throw InvalidArgument("axis_max must be positive");
    std::vector<std::string> lines;
    for (const auto& bar : detail::ordered_bars(barcode.intervals(dim), order)) {
        auto col = [&](double v) {
            return static_cast<int>(std::lround(std::clamp(v / top, 0.0, 1.0) * columns));
        };
        const int start = col(bar.birth);
        const int stop = bar.infinite() ? columns : std::max(col(bar.death), start + 1);
        std::string line(static_cast<std::size_t>(start), ' ');
        line.append(static_cast<std::size_t>(stop - start), '-');
        if (bar.infinite()) line += '>';
        line.append(static_cast<std::size_t>(columns + 1 - static_cast<int>(line.size()) + 1), ' ');
        line += "[" + detail::fixed(bar.birth, 3) + ", " + (bar.infinite() ? std::string("inf") : detail::fixed(bar.death, 3)) + ")";
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace persistry
