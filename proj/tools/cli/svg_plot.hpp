#ifndef CENTRIC_CLI_SVG_PLOT_HPP
#define CENTRIC_CLI_SVG_PLOT_HPP

#include <optional>
#include <string>
#include <utility>

#include "centric/dataset.hpp"

namespace centric::cli {

struct PlotOptions {
    std::string title;
    /// Plot these two coordinates instead of the default view; required for d > 3.
    std::optional<std::pair<std::size_t, std::size_t>> dims;
    int width = 640;
    int height = 640;
    /// Point radius in pixels; 0 picks one from n.
    double radius = 0.0;
};

/// Fixed orthographic camera for 3D data (degrees).
inline constexpr double kViewAzimuth = -55.0;
inline constexpr double kViewElevation = 25.0;

/**
 * SVG 1.1 scatter plot, one color per label (single color without labels).
 * Output depends only on the inputs; numbers are printed with two decimals.
 * Throws std::invalid_argument for d > 3 without `dims`.
 */
std::string render_svg(const Dataset& dataset, const Partition* labels, const PlotOptions& options = {});

} // namespace centric::cli

#endif
