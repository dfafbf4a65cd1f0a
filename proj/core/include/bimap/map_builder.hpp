#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bimap/chain_search.hpp"
#include "bimap/geometry.hpp"
#include "bimap/matching.hpp"

// Turns accepted chains into an injective piecewise-linear map and runs the
// second-pass recoveries for large non-monotonic segments and sandwiched
// chains with deviant local slope.

namespace bimap {

struct SecondPassParams {
    // A gap must exceed min_gap_scale * chain_size * mean token length on
    // its axis before it is worth re-searching.
    double min_gap_scale = 1.0;
    // A gap intersection qualifies only within this multiple of the mean
    // inter-anchor spacing from the first-pass trace.
    double proximity_factor = 2.0;
    bool enabled = true;
};

struct EncapsulationResult {
    std::vector<MapAnchor> anchors;  // strictly increasing, with endpoints
    std::vector<Mer> mers;
};

// Replaces maximal runs that violate y-monotonicity with their minimum
// enclosing rectangle's corners, merging adjacent rectangles until the
// anchor sequence is strictly increasing; appends origin and terminus.
// Points must be sorted by x with distinct coordinates; points outside the
// space are an input error.
EncapsulationResult encapsulate_mers(std::span<const Point> points, const BitextSpace& space);

// Concatenates chain points, drops cross-chain duplicate coordinates
// (first occurrence wins), sorts by x and encapsulates.
BitextMap build_map(std::span<const Chain> chains, const BitextSpace& space,
                    std::size_t* duplicates_dropped = nullptr);

BitextMap build_map_from_points(std::span<const Point> points, const BitextSpace& space);

struct GapRect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double slope() const { return height() / width(); }
};

// Intersections of x-axis anchor gaps with y-axis anchor gaps from distinct
// map segments, both wider than min_gap on their axis and lying within
// proximity_band (vertical distance) of the map trace. Non-monotonic
// segments missed by the first pass occupy exactly such intersections.
std::vector<GapRect> find_gap_intersections(const BitextMap& map, double min_gap_x,
                                            double min_gap_y, double proximity_band);

// Inter-anchor regions along the trace that are wide enough on both axes to
// hold another chain; searched with their own local diagonal.
std::vector<GapRect> sandwiched_regions(const BitextMap& map, double min_gap_x,
                                        double min_gap_y);

// Re-searches gap intersections and sandwiched regions, referencing the
// angle filter to each region's local diagonal, then rebuilds the map with
// any newly accepted chain points merged in.
BitextMap second_pass(const BitextMap& first_pass, const TokenizedText& x_text,
                      const TokenizedText& y_text, const MatchingPredicateConfig& cfg,
                      const SimrParams& params, const SecondPassParams& sp,
                      SearchCounters* counters = nullptr);

enum class GapAxis { x, y };

struct GapEntry {
    GapAxis axis;
    double start = 0;
    double end = 0;
};

// Inter-anchor jumps exceeding `threshold` characters on either axis.
// Large jumps are the telltale sign of omissions or a lost trace.
std::vector<GapEntry> gap_report(const BitextMap& map, double threshold);

}  // namespace bimap
