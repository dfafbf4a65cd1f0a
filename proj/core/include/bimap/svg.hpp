#pragma once

#include <span>
#include <string>

#include "bimap/geometry.hpp"

// Static SVG scatterplots of a bitext space: main diagonal, candidate
// points, accepted chain points, and the map trace. Output is byte-stable
// for identical input.

namespace bimap {

struct SvgOptions {
    double canvas = 720;  // longer edge, pixels
    double margin = 24;
};

std::string render_scatter_svg(const BitextSpace& space, std::span<const Point> candidates,
                               std::span<const Point> accepted, const BitextMap* map,
                               const SvgOptions& opts = {});

}  // namespace bimap
