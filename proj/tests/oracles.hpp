#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bimap/geometry.hpp"

// Brute-force reference computations, kept independent of the library's
// implementation paths.

namespace oracles {

// Longest common subsequence by exhaustive enumeration of one side's
// subsequences. Only usable for short strings.
inline std::size_t lcs_exhaustive(std::u32string_view a, std::u32string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    const std::size_t n = a.size();
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::u32string sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) sub.push_back(a[i]);
        if (sub.size() <= best) continue;
        // subsequence test against b
        std::size_t j = 0;
        for (char32_t c : b) {
            if (j < sub.size() && c == sub[j]) ++j;
        }
        if (j == sub.size()) best = sub.size();
    }
    return best;
}

// All k-subsets of indices 0..n-1.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        if (idx[i] == i + n - k) return;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// The k-subset minimizing the displacement range (max - min), by brute
// force; returns the chosen displacement values sorted.
inline std::vector<double> min_range_subset(const std::vector<double>& displacements,
                                            std::size_t k) {
    std::vector<std::size_t> order(displacements.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    double best_range = std::numeric_limits<double>::infinity();
    std::vector<double> best;
    for_each_subset(displacements.size(), k, [&](const std::vector<std::size_t>& idx) {
        double lo = displacements[idx[0]], hi = displacements[idx[0]];
        for (std::size_t i : idx) {
            lo = std::min(lo, displacements[i]);
            hi = std::max(hi, displacements[i]);
        }
        if (hi - lo < best_range) {
            best_range = hi - lo;
            best.clear();
            for (std::size_t i : idx) best.push_back(displacements[i]);
            std::sort(best.begin(), best.end());
        }
    });
    return best;
}

// Ordinary least squares fit, written out longhand.
struct LineFit {
    double slope, intercept;
};
inline LineFit ols(const std::vector<bimap::Point>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& p : pts) {
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return LineFit{slope, (sy - slope * sx) / n};
}

// Repeatedly merges any adjacent pair of blocks that violates strict
// monotonicity, rescanning from the start each time; a deliberately naive
// counterpart to the production single-sweep encapsulation.
struct OracleBlock {
    double min_x, max_x, min_y, max_y;
    std::size_t points = 1;
};
inline std::vector<OracleBlock> merge_monotone(const std::vector<bimap::Point>& sorted_pts) {
    std::vector<OracleBlock> blocks;
    for (const auto& p : sorted_pts) blocks.push_back(OracleBlock{p.x, p.x, p.y, p.y, 1});
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
            if (blocks[i].max_y < blocks[i + 1].min_y) continue;
            blocks[i].max_x = blocks[i + 1].max_x;
            blocks[i].min_y = std::min(blocks[i].min_y, blocks[i + 1].min_y);
            blocks[i].max_y = std::max(blocks[i].max_y, blocks[i + 1].max_y);
            blocks[i].points += blocks[i + 1].points;
            blocks.erase(blocks.begin() + static_cast<long>(i) + 1);
            changed = true;
            break;
        }
    }
    return blocks;
}

}  // namespace oracles
