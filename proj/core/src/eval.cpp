#include "bimap/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace bimap {

ErrorStats map_error(const BitextMap& map, std::span<const Point> refs, ErrorMetric metric) {
    if (refs.empty()) throw std::domain_error("empty reference point set");
    const BitextSpace& space = map.space();
    const double perp_scale = space.width / space.diagonal();

    std::vector<double> errors;
    errors.reserve(refs.size());
    for (const Point& r : refs) {
        double e = 0;
        switch (metric) {
            case ErrorMetric::vertical:
                e = std::abs(map.y_at(r.x) - r.y);
                break;
            case ErrorMetric::horizontal:
                e = std::abs(map.x_at(r.y) - r.x);
                break;
            case ErrorMetric::perpendicular:
                e = std::abs(map.y_at(r.x) - r.y) * perp_scale;
                break;
        }
        errors.push_back(e);
    }

    ErrorStats stats;
    stats.metric = metric;
    double ss = 0;
    for (double e : errors) ss += e * e;
    stats.rms = std::sqrt(ss / static_cast<double>(errors.size()));

    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    stats.median_abs = (n % 2 == 1) ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
    // Nearest-rank percentile.
    const std::size_t rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n)));
    stats.p99 = errors[rank == 0 ? 0 : rank - 1];
    return stats;
}

namespace {

// Key under which same_block-equal blocks compare equal: the begin of an
// empty side is irrelevant.
std::array<std::size_t, 4> block_key(const AlignedBlock& b) {
    return {b.x.count, b.x.count ? b.x.begin : 0, b.y.count, b.y.count ? b.y.begin : 0};
}

}  // namespace

std::size_t alignment_errors(const Alignment& test, const Alignment& reference) {
    if (test.x_sentences != reference.x_sentences || test.y_sentences != reference.y_sentences)
        throw std::invalid_argument("alignments cover different sentence counts");
    std::vector<std::array<std::size_t, 4>> keys;
    keys.reserve(test.blocks.size());
    for (const AlignedBlock& t : test.blocks) keys.push_back(block_key(t));
    std::sort(keys.begin(), keys.end());
    std::size_t errors = 0;
    for (const AlignedBlock& ref : reference.blocks) {
        if (!std::binary_search(keys.begin(), keys.end(), block_key(ref))) ++errors;
    }
    return errors;
}

}  // namespace bimap
