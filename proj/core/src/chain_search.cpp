#include "bimap/chain_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bimap {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double angle_of_slope_deg(double slope) { return std::atan(slope) * kRadToDeg; }

bool injective(std::span<const Point> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].x == points[j].x || points[i].y == points[j].y) return false;
        }
    }
    return true;
}

}  // namespace

Point Chain::top_right() const {
    Point tr = points.front();
    for (const Point& p : points) {
        tr.x = std::max(tr.x, p.x);
        tr.y = std::max(tr.y, p.y);
    }
    tr.x_index = 0;
    tr.y_index = 0;
    return tr;
}

int ambiguity_level(const Point& p, std::span<const Point> points_in_rect) {
    int col = 0, row = 0;
    for (const Point& q : points_in_rect) {
        if (q.x == p.x) ++col;
        if (q.y == p.y) ++row;
    }
    return col + row - 2;
}

std::vector<Point> filter_ambiguous(std::span<const Point> points, int max_pal) {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const Point& p : points) {
        if (ambiguity_level(p, points) <= max_pal) out.push_back(p);
    }
    return out;
}

std::vector<CandidateChain> enumerate_windows(std::span<const Point> points, int k,
                                              double reference_slope) {
    std::vector<CandidateChain> out;
    if (k < 2 || points.size() < static_cast<std::size_t>(k)) return out;

    std::vector<Point> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [&](const Point& a, const Point& b) {
        const double da = displacement_from_slope(a, reference_slope);
        const double db = displacement_from_slope(b, reference_slope);
        if (da != db) return da < db;
        if (a.x != b.x) return a.x < b.x;  // deterministic order for ties
        return a.y < b.y;
    });

    const std::size_t n = sorted.size();
    const std::size_t kk = static_cast<std::size_t>(k);
    out.reserve(n - kk + 1);
    for (std::size_t w = 0; w + kk <= n; ++w) {
        auto fitted = chain_stats(std::span<const Point>(sorted.data() + w, kk));
        if (!fitted) continue;  // degenerate window (all x equal)
        out.push_back(CandidateChain{std::move(*fitted), w});
    }
    return out;
}

std::optional<Chain> chain_stats(std::span<const Point> points) {
    if (points.size() < 2) return std::nullopt;
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const Point& p : points) {
        sx += p.x;
        sy += p.y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const Point& p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    if (sxx == 0.0) return std::nullopt;  // vertical point set

    Chain c;
    c.points.assign(points.begin(), points.end());
    c.lsq_slope = sxy / sxx;
    c.lsq_intercept = my - c.lsq_slope * mx;
    const double denom = std::sqrt(1.0 + c.lsq_slope * c.lsq_slope);
    double ss = 0;
    for (const Point& p : points) {
        const double d = (p.y - c.lsq_intercept - c.lsq_slope * p.x) / denom;
        ss += d * d;
    }
    c.rms_dispersal = std::sqrt(ss / n);
    c.angle_deg = angle_of_slope_deg(c.lsq_slope);
    return c;
}

bool accept_chain(const Chain& c, const SimrParams& params, double diagonal_slope) {
    if (c.rms_dispersal > params.max_point_dispersal) return false;
    if (std::abs(c.angle_deg - angle_of_slope_deg(diagonal_slope)) > params.max_angle_deviation)
        return false;
    return injective(c.points);
}

std::optional<Chain> best_chain(std::span<const CandidateChain> candidates,
                                const SimrParams& params, double diagonal_slope) {
    const double diag_angle = angle_of_slope_deg(diagonal_slope);
    const CandidateChain* best = nullptr;
    for (const CandidateChain& cand : candidates) {
        if (!accept_chain(cand.chain, params, diagonal_slope)) continue;
        if (!best) {
            best = &cand;
            continue;
        }
        const double dev = std::abs(cand.chain.angle_deg - diag_angle);
        const double best_dev = std::abs(best->chain.angle_deg - diag_angle);
        if (cand.chain.rms_dispersal < best->chain.rms_dispersal ||
            (cand.chain.rms_dispersal == best->chain.rms_dispersal &&
             (dev < best_dev || (dev == best_dev && cand.window_index < best->window_index)))) {
            best = &cand;
        }
    }
    if (!best) return std::nullopt;
    return best->chain;
}

std::optional<Chain> find_next_chain(const Point& anchor, const SimrParams& params,
                                     const TokenizedText& x_text, const TokenizedText& y_text,
                                     const MatchingPredicateConfig& cfg, const BitextSpace& space,
                                     double diagonal_slope, SearchCounters* counters) {
    if (anchor.x >= space.width || anchor.y >= space.height) return std::nullopt;

    double w = params.initial_rect_width * space.width;
    double h = w * space.slope();
    while (true) {
        SearchRectangle rect{anchor.x, anchor.y,
                             std::min(w, space.width - anchor.x),
                             std::min(h, space.height - anchor.y)};
        std::vector<Point> points = generate_points(rect, x_text, y_text, cfg);
        if (counters) {
            counters->points_generated += points.size();
            ++counters->rectangles_searched;
        }
        std::vector<Point> kept = filter_ambiguous(points, params.max_pal);
        auto candidates = enumerate_windows(kept, params.chain_size, diagonal_slope);
        if (auto best = best_chain(candidates, params, diagonal_slope)) return best;

        const bool covered = anchor.x + w >= space.width && anchor.y + h >= space.height;
        if (covered) return std::nullopt;
        w *= params.rect_growth;
        h *= params.rect_growth;
    }
}

std::vector<Chain> trace_first_pass(const TokenizedText& x_text, const TokenizedText& y_text,
                                    const MatchingPredicateConfig& cfg, const SimrParams& params,
                                    const BitextSpace& space, SearchCounters* counters) {
    std::vector<Chain> chains;
    Point anchor{0.0, 0.0, 0, 0};
    while (auto chain =
               find_next_chain(anchor, params, x_text, y_text, cfg, space, space.slope(), counters)) {
        anchor = chain->top_right();
        chains.push_back(std::move(*chain));
    }
    return chains;
}

std::vector<Chain> chains_in_region(std::span<const Point> points, const SimrParams& params,
                                    double local_slope) {
    std::vector<Chain> found;
    std::vector<Point> pool = filter_ambiguous(points, params.max_pal);
    while (pool.size() >= static_cast<std::size_t>(params.chain_size)) {
        auto candidates = enumerate_windows(pool, params.chain_size, local_slope);
        auto best = best_chain(candidates, params, local_slope);
        if (!best) break;
        // Remove the accepted chain's points and anything sharing a row or
        // column with them; chains in one region must stay injective.
        std::vector<Point> rest;
        rest.reserve(pool.size());
        for (const Point& p : pool) {
            bool conflicts = false;
            for (const Point& q : best->points) {
                if (p.x == q.x || p.y == q.y) {
                    conflicts = true;
                    break;
                }
            }
            if (!conflicts) rest.push_back(p);
        }
        pool = std::move(rest);
        found.push_back(std::move(*best));
    }
    return found;
}

}  // namespace bimap
