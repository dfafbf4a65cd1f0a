#include "bimap/gsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace bimap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t cell_index(const std::vector<double>& bounds, double coord) {
    if (coord < 0.0 || bounds.empty() || coord >= bounds.back())
        throw std::invalid_argument("point outside the sentence grid");
    auto it = std::upper_bound(bounds.begin(), bounds.end(), coord);
    return static_cast<std::size_t>(it - bounds.begin());
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Rect {
    std::size_t x0, x1, y0, y1;  // inclusive sentence index ranges
};

// Strict block order: b fully after a on both axes.
bool ordered(const Rect& a, const Rect& b) { return a.x1 < b.x0 && a.y1 < b.y0; }

}  // namespace

bool same_block(const AlignedBlock& a, const AlignedBlock& b) {
    if (a.x.count != b.x.count || a.y.count != b.y.count) return false;
    if (a.x.count != 0 && a.x.begin != b.x.begin) return false;
    if (a.y.count != 0 && a.y.begin != b.y.begin) return false;
    return true;
}

std::vector<Cell> points_to_cells(std::span<const Point> points, const SentenceGrid& grid) {
    std::vector<Cell> cells;
    cells.reserve(points.size());
    for (const Point& p : points)
        cells.emplace_back(cell_index(grid.x_bounds, p.x), cell_index(grid.y_bounds, p.y));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

std::vector<AlignedBlock> close_and_fill(std::span<const Cell> relation,
                                         std::size_t x_sentences, std::size_t y_sentences) {
    // Closure: cells sharing a row or a column belong to one component.
    UnionFind uf(relation.size());
    std::unordered_map<std::size_t, std::size_t> first_in_col, first_in_row;
    for (std::size_t i = 0; i < relation.size(); ++i) {
        auto [cx, inserted_c] = first_in_col.try_emplace(relation[i].first, i);
        if (!inserted_c) uf.unite(i, cx->second);
        auto [ry, inserted_r] = first_in_row.try_emplace(relation[i].second, i);
        if (!inserted_r) uf.unite(i, ry->second);
    }
    std::unordered_map<std::size_t, Rect> comp;
    for (std::size_t i = 0; i < relation.size(); ++i) {
        const std::size_t root = uf.find(i);
        auto [it, inserted] = comp.try_emplace(
            root, Rect{relation[i].first, relation[i].first, relation[i].second, relation[i].second});
        if (!inserted) {
            it->second.x0 = std::min(it->second.x0, relation[i].first);
            it->second.x1 = std::max(it->second.x1, relation[i].first);
            it->second.y0 = std::min(it->second.y0, relation[i].second);
            it->second.y1 = std::max(it->second.y1, relation[i].second);
        }
    }

    std::vector<Rect> rects;
    rects.reserve(comp.size());
    for (auto& [root, r] : comp) rects.push_back(r);
    std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) { return a.x0 < b.x0; });

    // Widened rectangles may overlap or cross; fold until the sequence is
    // strictly ordered on both axes, adding as few cells as possible.
    std::vector<Rect> merged;
    for (const Rect& r : rects) {
        merged.push_back(r);
        while (merged.size() >= 2) {
            Rect& prev = merged[merged.size() - 2];
            Rect& cur = merged.back();
            if (ordered(prev, cur)) break;
            prev.x0 = std::min(prev.x0, cur.x0);
            prev.x1 = std::max(prev.x1, cur.x1);
            prev.y0 = std::min(prev.y0, cur.y0);
            prev.y1 = std::max(prev.y1, cur.y1);
            merged.pop_back();
        }
    }

    // Uncovered ranges between blocks become empty blocks, treated exactly
    // like aligned blocks downstream.
    std::vector<AlignedBlock> out;
    std::size_t nx = 0, ny = 0;
    auto emit_gap = [&](std::size_t gx_end, std::size_t gy_end) {
        if (nx < gx_end || ny < gy_end) {
            AlignedBlock gap;
            gap.x = IndexRange{nx, gx_end - nx};
            gap.y = IndexRange{ny, gy_end - ny};
            gap.from_points = false;
            out.push_back(gap);
        }
    };
    for (const Rect& r : merged) {
        emit_gap(r.x0, r.y0);
        AlignedBlock b;
        b.x = IndexRange{r.x0, r.x1 - r.x0 + 1};
        b.y = IndexRange{r.y0, r.y1 - r.y0 + 1};
        b.from_points = true;
        out.push_back(b);
        nx = r.x1 + 1;
        ny = r.y1 + 1;
    }
    emit_gap(x_sentences, y_sentences);
    return out;
}

namespace {

// -100 * log of the probability that two segments of these character
// lengths are mutual translations under the normal length-ratio model.
double match_cost(double l1, double l2, const LengthModelParams& m) {
    if (l1 == 0.0 && l2 == 0.0) return 0.0;
    const double mean = (l1 + l2 / m.length_ratio_mean) / 2.0;
    double z = (m.length_ratio_mean * l1 - l2) / std::sqrt(m.length_variance * mean);
    z = std::abs(z);
    double pd = std::erfc(z / std::numbers::sqrt2);  // two-sided tail
    pd = std::max(pd, 1e-300);
    return -100.0 * std::log(pd);
}

struct Transition {
    std::size_t dx, dy;
    double penalty;
};

}  // namespace

LengthAlignResult length_align(std::span<const double> x_lens, std::span<const double> y_lens,
                               const LengthModelParams& model) {
    const std::size_t nx = x_lens.size(), ny = y_lens.size();
    const Transition transitions[] = {
        {1, 1, 0.0},
        {1, 0, model.penalty_01},
        {0, 1, model.penalty_01},
        {2, 1, model.penalty_21},
        {1, 2, model.penalty_21},
        {2, 2, model.penalty_22},
    };

    const std::size_t cols = ny + 1;
    auto at = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
    std::vector<double> best((nx + 1) * cols, kInf), second((nx + 1) * cols, kInf);
    std::vector<std::uint8_t> back((nx + 1) * cols, 0);
    best[at(0, 0)] = 0.0;

    for (std::size_t i = 0; i <= nx; ++i) {
        for (std::size_t j = 0; j <= ny; ++j) {
            if (i == 0 && j == 0) continue;
            double b1 = kInf, b2 = kInf;
            std::uint8_t arg = 0;
            for (std::uint8_t t = 0; t < 6; ++t) {
                const Transition& tr = transitions[t];
                if (i < tr.dx || j < tr.dy) continue;
                double lx = 0, ly = 0;
                for (std::size_t a = 0; a < tr.dx; ++a) lx += x_lens[i - 1 - a];
                for (std::size_t a = 0; a < tr.dy; ++a) ly += y_lens[j - 1 - a];
                const double w = match_cost(lx, ly, model) + tr.penalty;
                const std::size_t prev = at(i - tr.dx, j - tr.dy);
                const double c1 = best[prev] + w;
                const double c2 = second[prev] + w;
                if (c1 < b1) {
                    b2 = b1;
                    b1 = c1;
                    arg = t;
                } else if (c1 < b2) {
                    b2 = c1;
                }
                if (c2 < b2) b2 = c2;
            }
            best[at(i, j)] = b1;
            second[at(i, j)] = b2;
            back[at(i, j)] = arg;
        }
    }

    LengthAlignResult result;
    result.total_cost = best[at(nx, ny)];
    std::size_t i = nx, j = ny;
    while (i > 0 || j > 0) {
        const Transition& tr = transitions[back[at(i, j)]];
        AlignedBlock b;
        b.x = IndexRange{i - tr.dx, tr.dx};
        b.y = IndexRange{j - tr.dy, tr.dy};
        b.from_points = false;
        result.blocks.push_back(b);
        i -= tr.dx;
        j -= tr.dy;
    }
    std::reverse(result.blocks.begin(), result.blocks.end());

    const double gap = second[at(nx, ny)] - best[at(nx, ny)];
    const double beads = std::max<std::size_t>(result.blocks.size(), 1);
    result.confidence = std::isfinite(gap) ? gap / static_cast<double>(beads) : kInf;
    return result;
}

namespace {

AlignedBlock region_of(std::span<const AlignedBlock> blocks) {
    AlignedBlock region = blocks.front();
    for (const AlignedBlock& b : blocks.subspan(1)) {
        if (b.x.count) {
            const std::size_t begin = region.x.count ? std::min(region.x.begin, b.x.begin) : b.x.begin;
            const std::size_t end = region.x.count ? std::max(region.x.end(), b.x.end()) : b.x.end();
            region.x = IndexRange{begin, end - begin};
        }
        if (b.y.count) {
            const std::size_t begin = region.y.count ? std::min(region.y.begin, b.y.begin) : b.y.begin;
            const std::size_t end = region.y.count ? std::max(region.y.end(), b.y.end()) : b.y.end();
            region.y = IndexRange{begin, end - begin};
        }
    }
    return region;
}

}  // namespace

Alignment gsa_align(std::span<const Point> points, const SentenceGrid& grid,
                    std::span<const double> x_lens, std::span<const double> y_lens,
                    const GsaParams& params, GsaStats* stats) {
    if (x_lens.size() != grid.x_sentences() || y_lens.size() != grid.y_sentences())
        throw std::invalid_argument("sentence lengths inconsistent with the grid");

    std::vector<Cell> cells = points_to_cells(points, grid);
    std::vector<AlignedBlock> blocks =
        close_and_fill(cells, grid.x_sentences(), grid.y_sentences());

    Alignment out;
    out.x_sentences = grid.x_sentences();
    out.y_sentences = grid.y_sentences();

    // An empty-sided block next to a non-1x1 block is the classic
    // omission-next-to-commission pattern; such neighbours are re-aligned as
    // one region so the length model can move sentences across the seam.
    std::size_t i = 0;
    while (i < blocks.size()) {
        std::size_t j = i + 1;
        while (j < blocks.size()) {
            const AlignedBlock& a = blocks[j - 1];
            const AlignedBlock& b = blocks[j];
            const bool glue = (a.empty_sided() && !b.is_1x1()) || (b.empty_sided() && !a.is_1x1());
            if (!glue) break;
            ++j;
        }
        std::span<const AlignedBlock> group(blocks.data() + i, j - i);
        const AlignedBlock region = region_of(group);

        if (region.is_1x1() && group.size() == 1) {
            out.blocks.push_back(group.front());
            i = j;
            continue;
        }

        std::vector<double> rx(x_lens.begin() + region.x.begin,
                               x_lens.begin() + region.x.end());
        std::vector<double> ry(y_lens.begin() + region.y.begin,
                               y_lens.begin() + region.y.end());
        if (stats) {
            stats->max_region_x = std::max(stats->max_region_x, region.x.count);
            stats->max_region_y = std::max(stats->max_region_y, region.y.count);
            ++stats->regions_realigned;
        }
        LengthAlignResult realigned = length_align(rx, ry, params.length_model);

        if (realigned.confidence >= params.min_confidence) {
            for (AlignedBlock b : realigned.blocks) {
                b.x.begin += region.x.begin;
                b.y.begin += region.y.begin;
                out.blocks.push_back(b);
            }
        } else {
            out.blocks.insert(out.blocks.end(), group.begin(), group.end());
        }
        i = j;
    }
    return out;
}

Alignment gsa_align(std::span<const Point> points, const SentenceGrid& grid,
                    const GsaParams& params, GsaStats* stats) {
    std::vector<double> x_lens(grid.x_sentences()), y_lens(grid.y_sentences());
    for (std::size_t i = 0; i < x_lens.size(); ++i) x_lens[i] = grid.x_length(i);
    for (std::size_t i = 0; i < y_lens.size(); ++i) y_lens[i] = grid.y_length(i);
    return gsa_align(points, grid, x_lens, y_lens, params, stats);
}

}  // namespace bimap
