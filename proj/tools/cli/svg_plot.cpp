#include "cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace centric::cli {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // Avoid "-0.00" so mirrored inputs give identical bytes.
    if (std::string_view(buf) == "-0.00") {
        return "0.00";
    }
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::vector<std::array<double, 2>> project(const Dataset& ds, const PlotOptions& options) {
    const std::size_t d = ds.dim();
    std::vector<std::array<double, 2>> xy(ds.size());
    if (options.dims) {
        const auto [a, b] = *options.dims;
        if (a >= d || b >= d) {
            throw std::invalid_argument("plot dims out of range for dimension " + std::to_string(d));
        }
        for (Index i = 0; i < ds.size(); ++i) {
            xy[i] = {ds.point(i)[a], ds.point(i)[b]};
        }
        return xy;
    }
    if (d > 3) {
        throw std::invalid_argument("cannot plot " + std::to_string(d) + "-dimensional data; use --dims i,j to project");
    }
    if (d == 1) {
        for (Index i = 0; i < ds.size(); ++i) {
            xy[i] = {ds.point(i)[0], 0.0};
        }
        return xy;
    }
    if (d == 2) {
        for (Index i = 0; i < ds.size(); ++i) {
            xy[i] = {ds.point(i)[0], ds.point(i)[1]};
        }
        return xy;
    }
    const double az = kViewAzimuth * std::numbers::pi / 180.0;
    const double el = kViewElevation * std::numbers::pi / 180.0;
    for (Index i = 0; i < ds.size(); ++i) {
        const auto p = ds.point(i);
        const double x1 = std::cos(az) * p[0] - std::sin(az) * p[1];
        const double y1 = std::sin(az) * p[0] + std::cos(az) * p[1];
        xy[i] = {x1, std::cos(el) * p[2] - std::sin(el) * y1};
    }
    return xy;
}

} // namespace

std::string render_svg(const Dataset& dataset, const Partition* labels, const PlotOptions& options) {
    if (labels != nullptr && labels->size() != dataset.size()) {
        throw std::invalid_argument("label count does not match the number of points");
    }
    const auto xy = project(dataset, options);

    double lo_x = xy[0][0], hi_x = xy[0][0], lo_y = xy[0][1], hi_y = xy[0][1];
    for (const auto& p : xy) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    }
    const double margin = 30.0;
    const double top = options.title.empty() ? margin : margin + 20.0;
    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    const double scale = std::min((options.width - 2 * margin) / span_x, (options.height - margin - top) / span_y);
    const double off_x = margin + 0.5 * ((options.width - 2 * margin) - scale * span_x);
    const double off_y = top + 0.5 * ((options.height - margin - top) - scale * span_y);
    const double r = options.radius > 0 ? options.radius : (dataset.size() > 1000 ? 1.2 : 2.5);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << options.width / 2 << "\" y=\"" << fixed2(margin)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(options.title)
            << "</text>\n";
    }
    const int groups = labels == nullptr ? 1 : std::max(labels->k(), 1);
    for (int g = 0; g < groups; ++g) {
        svg << "<g fill=\"" << kPalette[static_cast<std::size_t>(g) % kPalette.size()] << "\" class=\"label-" << g
            << "\">\n";
        for (Index i = 0; i < xy.size(); ++i) {
            if (labels != nullptr && labels->label(i) != g) {
                continue;
            }
            const double px = off_x + scale * (xy[i][0] - lo_x);
            const double py = off_y + scale * (hi_y - xy[i][1]);
            svg << "<circle cx=\"" << fixed2(px) << "\" cy=\"" << fixed2(py) << "\" r=\"" << fixed2(r) << "\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace centric::cli
