#include "bimap/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bimap {

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_scatter_svg(const BitextSpace& space, std::span<const Point> candidates,
                               std::span<const Point> accepted, const BitextMap* map,
                               const SvgOptions& opts) {
    const double longer = std::max(space.width, space.height);
    const double scale = (opts.canvas - 2 * opts.margin) / (longer > 0 ? longer : 1.0);
    const double w = space.width * scale, h = space.height * scale;
    const double total_w = w + 2 * opts.margin, total_h = h + 2 * opts.margin;
    // SVG y grows downward; bitext y grows upward.
    auto X = [&](double x) { return opts.margin + x * scale; };
    auto Y = [&](double y) { return opts.margin + h - y * scale; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(total_w) << "\" height=\""
        << px(total_h) << "\" viewBox=\"0 0 " << px(total_w) << " " << px(total_h) << "\">\n";
    out << "<rect x=\"" << px(X(0)) << "\" y=\"" << px(Y(space.height)) << "\" width=\"" << px(w)
        << "\" height=\"" << px(h) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << px(X(0)) << "\" y1=\"" << px(Y(0)) << "\" x2=\"" << px(X(space.width))
        << "\" y2=\"" << px(Y(space.height))
        << "\" stroke=\"#888\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";

    if (map && !map->empty()) {
        out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const MapAnchor& a : map->anchors()) {
            if (!first) out << " ";
            out << px(X(a.x)) << "," << px(Y(a.y));
            first = false;
        }
        out << "\"/>\n";
    }
    for (const Point& p : candidates) {
        out << "<circle class=\"cand\" cx=\"" << px(X(p.x)) << "\" cy=\"" << px(Y(p.y))
            << "\" r=\"1.5\" fill=\"#bbb\"/>\n";
    }
    for (const Point& p : accepted) {
        out << "<circle class=\"chain\" cx=\"" << px(X(p.x)) << "\" cy=\"" << px(Y(p.y))
            << "\" r=\"2.2\" fill=\"#c23\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace bimap
