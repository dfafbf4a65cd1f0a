#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bimap/geometry.hpp"
#include "bimap/matching.hpp"

// Chain recognition: fixed-size, roughly collinear, injective groups of
// candidate points, found with an expanding-rectangle greedy search.

namespace bimap {

// Defaults for the tunable thresholds come from annealing runs against
// seeded synthetic dev bitexts; see tools' optimize subcommand.
struct SimrParams {
    double max_point_dispersal = 10.0;  // characters, RMS about the chain's line
    double max_angle_deviation = 10.0;  // degrees from the governing diagonal
    int max_pal = 5;                    // maximum point ambiguity level
    int chain_size = 7;                 // fixed k
    double initial_rect_width = 0.005;  // fraction of the space width
    double rect_growth = 1.15;          // per failed generation-recognition cycle
};

struct Chain {
    std::vector<Point> points;  // displacement order
    double lsq_slope = 0;
    double lsq_intercept = 0;
    double rms_dispersal = 0;  // RMS perpendicular distance to the fitted line
    double angle_deg = 0;      // arctan of the fitted slope

    std::size_t size() const { return points.size(); }
    Point top_right() const;  // (max x, max y) over the chain's points
};

// Scored candidate: the window's position in the displacement order breaks
// dispersal ties deterministically.
struct CandidateChain {
    Chain chain;
    std::size_t window_index = 0;
};

struct SearchCounters {
    std::size_t points_generated = 0;
    std::size_t rectangles_searched = 0;
};

// X + Y - 2, where X and Y count points sharing p's column and row within
// the current search rectangle's point set.
int ambiguity_level(const Point& p, std::span<const Point> points_in_rect);

// Points whose ambiguity level is at most max_pal. Recomputed from scratch
// for every rectangle: the ignored set changes as the rectangle expands.
std::vector<Point> filter_ambiguous(std::span<const Point> points, int max_pal);

// All contiguous length-k windows of the displacement-sorted point order.
// The best chain at the reference slope is always one of these windows.
std::vector<CandidateChain> enumerate_windows(std::span<const Point> points, int k,
                                              double reference_slope);

// Least-squares line (y on x), RMS perpendicular dispersal and angle.
// Degenerate sets (all x equal, or fewer than two points) yield nullopt.
std::optional<Chain> chain_stats(std::span<const Point> points);

// The three chain filters: linearity, constant slope, injectivity.
bool accept_chain(const Chain& c, const SimrParams& params, double diagonal_slope);

// Least-dispersed accepted candidate; ties broken by smaller angle
// deviation, then by lower window index.
std::optional<Chain> best_chain(std::span<const CandidateChain> candidates,
                                const SimrParams& params, double diagonal_slope);

// One generation-recognition cycle with an expanding rectangle anchored at
// `anchor` (exclusive). Empty once the rectangle covers the remaining space
// without producing an acceptable chain.
std::optional<Chain> find_next_chain(const Point& anchor, const SimrParams& params,
                                     const TokenizedText& x_text, const TokenizedText& y_text,
                                     const MatchingPredicateConfig& cfg, const BitextSpace& space,
                                     double diagonal_slope, SearchCounters* counters = nullptr);

// Greedy first-pass trace from the origin; each accepted chain's top-right
// corner anchors the next search.
std::vector<Chain> trace_first_pass(const TokenizedText& x_text, const TokenizedText& y_text,
                                    const MatchingPredicateConfig& cfg, const SimrParams& params,
                                    const BitextSpace& space, SearchCounters* counters = nullptr);

// Chain recognition over a fixed region with its own governing diagonal;
// used by the second pass. Greedily extracts disjoint accepted chains.
std::vector<Chain> chains_in_region(std::span<const Point> points, const SimrParams& params,
                                    double local_slope);

}  // namespace bimap
