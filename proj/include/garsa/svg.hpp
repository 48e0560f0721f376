#pragma once

#include <string>
#include <vector>

#include "garsa/map.hpp"
#include "garsa/profile.hpp"

namespace garsa {

/// One overlay drawn on top of the map. When `profile` has as many
/// samples as the polyline has points, segments are colored by width
/// (blue wide, red narrow) instead of the flat color.
struct SvgOverlay {
    std::vector<Point2> points;
    std::string color = "#1f77b4";
    double stroke = 2.0;
    std::string label;
    const WidthProfile* profile = nullptr;
    double heat_min = 0.0;
    double heat_max = 1.0;
};

/// Renders boundary chains in black plus the overlays, 1 px per meter,
/// viewBox fitted to the map bounds with a small margin.
std::string render_svg(const WaterwayMap& map, const std::vector<SvgOverlay>& overlays);

}  // namespace garsa
