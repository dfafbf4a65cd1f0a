#pragma once

#include <span>
#include <vector>

#include "bimap/geometry.hpp"
#include "bimap/gsa.hpp"

// Error metrics against reference correspondence points and reference
// alignments.

namespace bimap {

enum class ErrorMetric { horizontal, vertical, perpendicular };

struct ErrorStats {
    double rms = 0;
    double median_abs = 0;
    double p99 = 0;
    ErrorMetric metric = ErrorMetric::perpendicular;
};

// Per reference point: vertical error |map(x)-y|, horizontal error via the
// inverse map, perpendicular error as the vertical error projected onto the
// main-diagonal normal. Throws std::domain_error on an empty reference set.
ErrorStats map_error(const BitextMap& map, std::span<const Point> refs, ErrorMetric metric);

// One error per reference block with no equal block in the test alignment.
// Throws std::invalid_argument when sentence counts differ.
std::size_t alignment_errors(const Alignment& test, const Alignment& reference);

}  // namespace bimap
