#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bimap/chain_search.hpp"
#include "bimap/geometry.hpp"
#include "bimap/gsa.hpp"
#include "bimap/map_builder.hpp"
#include "bimap/matching.hpp"

// Plain-text file formats. All text I/O is UTF-8; offsets count Unicode
// scalar values, not bytes.

namespace bimap {

// The full tunable surface, as stored in a params file.
struct PipelineParams {
    SimrParams simr;
    double lcsr_threshold = 0.70;
    SecondPassParams second_pass;
    GsaParams gsa;
};

// "key = value" lines; '#' starts a comment; unknown keys are rejected.
PipelineParams load_params(const std::filesystem::path& file);
void save_params(const std::filesystem::path& file, const PipelineParams& params);

// Whole file, decoded. Throws std::runtime_error when unreadable.
std::u32string load_text(const std::filesystem::path& file);
void save_text(const std::filesystem::path& file, const std::string& bytes);

// One word per line; '#' comment lines ignored.
StopList load_stoplist(const std::filesystem::path& file);

// Tab-separated "sourceForm<TAB>targetForm" per line.
TranslationLexicon load_lexicon(const std::filesystem::path& file);

// One character offset per line: the end offset of each sentence.
std::vector<double> load_boundaries(const std::filesystem::path& file);
void save_boundaries(const std::filesystem::path& file, std::span<const double> bounds);

// "x<TAB>y" reals per line.
std::vector<Point> load_reference_points(const std::filesystem::path& file);
void save_reference_points(const std::filesystem::path& file, std::span<const Point> refs);

// Header "#bimap v1 width=<W> height=<H>", then "x<TAB>y" anchors in order;
// MER corner anchors carry a trailing tab and "M". MER corner pairs are
// adjacent, so the enclosed rectangles are recoverable; their interior
// points are not stored.
void save_map(const std::filesystem::path& file, const BitextMap& map);
BitextMap load_map(const std::filesystem::path& file);

// Blocks as "i..j<TAB>k..l" inclusive 0-based ranges, "-" for an empty side.
void save_alignment(const std::filesystem::path& file, const Alignment& alignment);
Alignment load_alignment(const std::filesystem::path& file);

// "X<TAB>y" sentence-index cell per line.
void save_relation(const std::filesystem::path& file, std::span<const Cell> cells);

// Dev-set manifest: paths to a bitext, its boundaries and its reference
// points, relative to the manifest's directory.
struct DevManifest {
    std::filesystem::path x_text, y_text, x_bounds, y_bounds, refs;
};
DevManifest load_manifest(const std::filesystem::path& file);
void save_manifest(const std::filesystem::path& file, const DevManifest& manifest);

}  // namespace bimap
