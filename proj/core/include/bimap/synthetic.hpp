#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimap/geometry.hpp"
#include "bimap/gsa.hpp"
#include "bimap/map_builder.hpp"

// Seeded generator of parallel pseudo-word bitexts with a known true map
// and alignment. Serves as the ground-truth oracle for evaluation and
// parameter optimization, standing in for hand-built reference sets.

namespace bimap {

struct OmissionSpec {
    GapAxis axis = GapAxis::y;  // the axis that carries the extra text
    double target_chars = 2000;
    double at_frac = 0.5;  // position along the bead sequence
};

struct InversionSpec {
    double at_frac = 0.5;
    int sentences_per_segment = 4;  // both switched segments get this many
};

// A span whose translation runs much longer than the original: its local
// slope deviates from the global diagonal while staying monotone.
struct StretchSpec {
    double at_frac = 0.5;
    int sentences = 10;
    int y_factor = 3;  // filler tokens multiply the y side by roughly this
};

struct SyntheticSpec {
    std::uint64_t seed = 1;
    std::size_t sentence_pairs = 200;  // beads before omissions/inversions
    double cognate_density = 0.25;     // fraction of tokens with a cognate twin
    double stray_rate = 0.0;           // false shared forms per x token
    double swap_rate = 0.05;           // local adjacent cognate reorderings
    double perturbation = 0.12;        // per-character mutation of cognate twins
    int frequent_types = 0;            // row/column noise generators
    double frequent_rate = 0.0;        // injection probability per sentence in a noisy region
    int min_tokens = 4;
    int max_tokens = 12;
    // Shared vocabulary size; small values imitate a Zipf-heavy text where
    // repeated forms create structured false matches everywhere.
    std::size_t vocab_size = 16384;
    // Bead-type mix; the remainder is 1-1.
    double p_21 = 0.0, p_12 = 0.0, p_22 = 0.0, p_10 = 0.0, p_01 = 0.0;
    std::vector<OmissionSpec> omissions;
    std::vector<InversionSpec> inversions;
    std::vector<StretchSpec> stretches;
};

struct SyntheticBitext {
    std::string x_utf8, y_utf8;
    std::u32string x_text, y_text;
    std::vector<double> x_bounds, y_bounds;  // sentence end offsets
    BitextSpace space;

    std::vector<Point> planted_tpcs;  // raw true points; crossings included
    BitextMap planted_tbm;            // injective reference map through them
    Alignment planted_alignment;

    std::vector<GapEntry> planted_omissions;   // realized spans
    std::vector<GapRect> planted_inversions;   // switched regions, char coords
    std::vector<GapRect> planted_stretches;    // deviant-slope regions
    double mean_token_len_x = 0, mean_token_len_y = 0;
};

// Throws std::invalid_argument for infeasible specs (densities outside
// [0,1], colliding span positions, empty sizes).
SyntheticBitext generate_synthetic(const SyntheticSpec& spec);

}  // namespace bimap
