#include "bimap/map_builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bimap {

namespace {

struct Block {
    double min_x, max_x, min_y, max_y;
    std::vector<Point> pts;
};

double mean_anchor_spacing(const BitextMap& map) {
    const auto& a = map.anchors();
    if (a.size() < 2) return map.space().diagonal();
    double total = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        total += std::hypot(a[i].x - a[i - 1].x, a[i].y - a[i - 1].y);
    return total / static_cast<double>(a.size() - 1);
}

// Vertical distance from an axis-aligned rectangle to the (monotone) trace;
// zero when the trace passes through it.
double distance_to_trace(const BitextMap& map, const GapRect& r) {
    const double lo = map.y_at(r.x0);
    const double hi = map.y_at(r.x1);
    if (r.y1 < lo) return lo - r.y1;
    if (r.y0 > hi) return r.y0 - hi;
    return 0.0;
}

}  // namespace

EncapsulationResult encapsulate_mers(std::span<const Point> points, const BitextSpace& space) {
    std::vector<Block> blocks;
    double prev_x = -1.0;
    for (const Point& p : points) {
        if (p.x < 0 || p.x > space.width || p.y < 0 || p.y > space.height)
            throw std::invalid_argument("correspondence point outside the bitext space");
        // A coordinate equal to an endpoint's cannot coexist with the exact
        // origin/terminus anchors under strict monotonicity.
        if (p.x <= 0 || p.y <= 0 || p.x >= space.width || p.y >= space.height) continue;
        if (p.x <= prev_x) throw std::invalid_argument("points must be sorted by x without ties");
        prev_x = p.x;

        blocks.push_back(Block{p.x, p.x, p.y, p.y, {p}});
        // Fold the new block leftward until the sequence is strictly
        // increasing in y again; x stays ordered because input is x-sorted.
        while (blocks.size() >= 2) {
            Block& prev = blocks[blocks.size() - 2];
            Block& cur = blocks.back();
            if (prev.max_y < cur.min_y) break;
            prev.max_x = cur.max_x;
            prev.min_y = std::min(prev.min_y, cur.min_y);
            prev.max_y = std::max(prev.max_y, cur.max_y);
            prev.pts.insert(prev.pts.end(), cur.pts.begin(), cur.pts.end());
            blocks.pop_back();
        }
    }

    EncapsulationResult out;
    out.anchors.push_back(MapAnchor{0.0, 0.0, false});
    for (Block& b : blocks) {
        if (b.pts.size() == 1) {
            out.anchors.push_back(MapAnchor{b.pts[0].x, b.pts[0].y, false});
        } else if (b.min_x == b.max_x || b.min_y == b.max_y) {
            // Degenerate (non-injective) run; keep its lower-left only.
            out.anchors.push_back(MapAnchor{b.min_x, b.min_y, false});
        } else {
            out.anchors.push_back(MapAnchor{b.min_x, b.min_y, true});
            out.anchors.push_back(MapAnchor{b.max_x, b.max_y, true});
            Mer mer;
            mer.lower_left = Point{b.min_x, b.min_y, 0, 0};
            mer.upper_right = Point{b.max_x, b.max_y, 0, 0};
            mer.enclosed = std::move(b.pts);
            out.mers.push_back(std::move(mer));
        }
    }
    out.anchors.push_back(MapAnchor{space.width, space.height, false});
    return out;
}

namespace {

BitextMap map_from_deduped(std::vector<Point> pts, const BitextSpace& space) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    EncapsulationResult enc = encapsulate_mers(pts, space);
    return BitextMap(std::move(enc.anchors), std::move(enc.mers), space);
}

std::vector<Point> dedupe_first_wins(std::span<const Point> points, std::size_t* dropped) {
    std::set<double> used_x, used_y;
    std::vector<Point> out;
    out.reserve(points.size());
    for (const Point& p : points) {
        if (used_x.count(p.x) || used_y.count(p.y)) {
            if (dropped) ++*dropped;
            continue;
        }
        used_x.insert(p.x);
        used_y.insert(p.y);
        out.push_back(p);
    }
    return out;
}

}  // namespace

BitextMap build_map(std::span<const Chain> chains, const BitextSpace& space,
                    std::size_t* duplicates_dropped) {
    std::vector<Point> pts;
    for (const Chain& c : chains) pts.insert(pts.end(), c.points.begin(), c.points.end());
    if (duplicates_dropped) *duplicates_dropped = 0;
    return map_from_deduped(dedupe_first_wins(pts, duplicates_dropped), space);
}

BitextMap build_map_from_points(std::span<const Point> points, const BitextSpace& space) {
    return map_from_deduped(dedupe_first_wins(points, nullptr), space);
}

std::vector<GapRect> find_gap_intersections(const BitextMap& map, double min_gap_x,
                                            double min_gap_y, double proximity_band) {
    const auto& a = map.anchors();
    std::vector<GapRect> out;
    std::vector<std::size_t> x_gaps, y_gaps;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i + 1].x - a[i].x > min_gap_x) x_gaps.push_back(i);
        if (a[i + 1].y - a[i].y > min_gap_y) y_gaps.push_back(i);
    }
    for (std::size_t i : x_gaps) {
        for (std::size_t j : y_gaps) {
            if (i == j) continue;  // the segment's own region is a sandwich search
            GapRect r{a[i].x, a[j].y, a[i + 1].x, a[j + 1].y};
            // Adjacent switched segments sit within their own size of the
            // trace, so the allowance grows with the rectangle.
            const double allowance = std::max(proximity_band, std::min(r.width(), r.height()));
            if (distance_to_trace(map, r) <= allowance) out.push_back(r);
        }
    }
    return out;
}

std::vector<GapRect> sandwiched_regions(const BitextMap& map, double min_gap_x,
                                        double min_gap_y) {
    const auto& a = map.anchors();
    std::vector<GapRect> out;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i + 1].x - a[i].x > min_gap_x && a[i + 1].y - a[i].y > min_gap_y)
            out.push_back(GapRect{a[i].x, a[i].y, a[i + 1].x, a[i + 1].y});
    }
    return out;
}

BitextMap second_pass(const BitextMap& first_pass, const TokenizedText& x_text,
                      const TokenizedText& y_text, const MatchingPredicateConfig& cfg,
                      const SimrParams& params, const SecondPassParams& sp,
                      SearchCounters* counters) {
    if (!sp.enabled) return first_pass;
    const double k = static_cast<double>(params.chain_size);
    const double min_gap_x = sp.min_gap_scale * k * x_text.mean_token_length();
    const double min_gap_y = sp.min_gap_scale * k * y_text.mean_token_length();
    const double band = sp.proximity_factor * mean_anchor_spacing(first_pass);

    std::vector<GapRect> regions =
        find_gap_intersections(first_pass, min_gap_x, min_gap_y, band);
    std::vector<GapRect> sandwiches = sandwiched_regions(first_pass, min_gap_x, min_gap_y);
    regions.insert(regions.end(), sandwiches.begin(), sandwiches.end());

    std::vector<Point> recovered;
    for (const GapRect& r : regions) {
        SearchRectangle rect{r.x0, r.y0, r.width(), r.height()};
        std::vector<Point> pts = generate_points(rect, x_text, y_text, cfg);
        if (counters) {
            counters->points_generated += pts.size();
            ++counters->rectangles_searched;
        }
        for (const Chain& c : chains_in_region(pts, params, r.slope()))
            recovered.insert(recovered.end(), c.points.begin(), c.points.end());
    }
    if (recovered.empty()) return first_pass;

    std::vector<Point> merged = first_pass.source_points();
    merged.insert(merged.end(), recovered.begin(), recovered.end());
    return build_map_from_points(merged, first_pass.space());
}

std::vector<GapEntry> gap_report(const BitextMap& map, double threshold) {
    const auto& a = map.anchors();
    std::vector<GapEntry> out;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i + 1].x - a[i].x > threshold)
            out.push_back(GapEntry{GapAxis::x, a[i].x, a[i + 1].x});
        if (a[i + 1].y - a[i].y > threshold)
            out.push_back(GapEntry{GapAxis::y, a[i].y, a[i + 1].y});
    }
    return out;
}

}  // namespace bimap
