#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bimap/geometry.hpp"

// Geometric sentence alignment: reduces a correspondence-point relation over
// a sentence grid to an ordered, non-overlapping block alignment, backing
// off to length-based re-alignment where the point evidence is ambiguous.

namespace bimap {

struct SentenceGrid {
    // Sentence end offsets (exclusive), strictly increasing; the last entry
    // is the text length. Works for any boundary type, paragraphs included.
    std::vector<double> x_bounds;
    std::vector<double> y_bounds;

    std::size_t x_sentences() const { return x_bounds.size(); }
    std::size_t y_sentences() const { return y_bounds.size(); }
    double x_length(std::size_t i) const { return x_bounds[i] - (i ? x_bounds[i - 1] : 0.0); }
    double y_length(std::size_t i) const { return y_bounds[i] - (i ? y_bounds[i - 1] : 0.0); }
};

struct IndexRange {
    std::size_t begin = 0;
    std::size_t count = 0;
    std::size_t end() const { return begin + count; }
};

struct AlignedBlock {
    IndexRange x;
    IndexRange y;
    bool from_points = false;  // false for blocks filling uncovered ranges

    bool is_1x1() const { return x.count == 1 && y.count == 1; }
    bool empty_sided() const { return x.count == 0 || y.count == 0; }
};

// Range equality; the begin of a zero-count side is ignored.
bool same_block(const AlignedBlock& a, const AlignedBlock& b);

struct Alignment {
    std::vector<AlignedBlock> blocks;
    std::size_t x_sentences = 0;
    std::size_t y_sentences = 0;
};

using Cell = std::pair<std::size_t, std::size_t>;

// Grid cells containing at least one point, sorted and de-duplicated.
// Throws std::invalid_argument for points outside the grid.
std::vector<Cell> points_to_cells(std::span<const Point> points, const SentenceGrid& grid);

// Transitive closure over shared rows/columns, widening to full rectangles
// and merging whenever ranges overlap or cross, then filling uncovered
// sentence ranges with empty blocks. Output blocks are ordered on both axes
// and jointly cover every sentence exactly once.
std::vector<AlignedBlock> close_and_fill(std::span<const Cell> relation,
                                         std::size_t x_sentences, std::size_t y_sentences);

struct LengthModelParams {
    double length_ratio_mean = 1.0;  // mean y/x character ratio
    double length_variance = 6.8;    // per-character variance of the ratio model
    double penalty_01 = 450;         // 1-0 / 0-1 beads, in -100*log prior units
    double penalty_21 = 230;         // 2-1 / 1-2
    double penalty_22 = 440;         // 2-2
};

struct LengthAlignResult {
    std::vector<AlignedBlock> blocks;  // bead sequence over local indices
    double total_cost = 0;
    double confidence = 0;  // best vs second-best path cost gap per bead
};

// Gale & Church style dynamic program over bead types
// {1-1, 1-0, 0-1, 2-1, 1-2, 2-2} minimizing total -log probability.
LengthAlignResult length_align(std::span<const double> x_lens, std::span<const double> y_lens,
                               const LengthModelParams& model = {});

struct GsaParams {
    double min_confidence = 200.0;  // below this the point-indicated blocks stand
    LengthModelParams length_model;
};

struct GsaStats {
    std::size_t max_region_x = 0;  // largest re-aligned region, in sentences
    std::size_t max_region_y = 0;
    std::size_t regions_realigned = 0;
};

// Full pipeline: cells -> closed blocks -> confidence-gated length-based
// re-alignment of every region that is not 1x1.
Alignment gsa_align(std::span<const Point> points, const SentenceGrid& grid,
                    std::span<const double> x_lens, std::span<const double> y_lens,
                    const GsaParams& params = {}, GsaStats* stats = nullptr);

// Convenience overload taking sentence lengths from the grid spans.
Alignment gsa_align(std::span<const Point> points, const SentenceGrid& grid,
                    const GsaParams& params = {}, GsaStats* stats = nullptr);

}  // namespace bimap
