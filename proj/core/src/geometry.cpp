#include "bimap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bimap {

double mean_position(const Token& t) { return t.mean_pos(); }

double BitextSpace::diagonal() const { return std::hypot(width, height); }

double perp_displacement(const Point& p, const BitextSpace& space) {
    return (p.y * space.width - p.x * space.height) / space.diagonal();
}

double displacement_from_slope(const Point& p, double slope) {
    return (p.y - slope * p.x) / std::sqrt(1.0 + slope * slope);
}

BitextMap::BitextMap(std::vector<MapAnchor> anchors, std::vector<Mer> mers, BitextSpace space)
    : anchors_(std::move(anchors)), mers_(std::move(mers)), space_(space) {
    if (anchors_.size() < 2) throw std::invalid_argument("bitext map needs at least the endpoint anchors");
    if (anchors_.front().x != 0.0 || anchors_.front().y != 0.0)
        throw std::invalid_argument("bitext map must start at the origin");
    if (anchors_.back().x != space_.width || anchors_.back().y != space_.height)
        throw std::invalid_argument("bitext map must end at the terminus");
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        if (!(anchors_[i - 1].x < anchors_[i].x && anchors_[i - 1].y < anchors_[i].y))
            throw std::invalid_argument("bitext map anchors must be strictly increasing");
    }
}

double BitextMap::y_at(double x) const {
    if (anchors_.empty()) throw std::domain_error("empty bitext map");
    if (x < 0.0 || x > space_.width) throw std::domain_error("x outside bitext space");
    if (x == anchors_.front().x) return anchors_.front().y;
    if (x == anchors_.back().x) return anchors_.back().y;
    auto it = std::lower_bound(anchors_.begin(), anchors_.end(), x,
                               [](const MapAnchor& a, double v) { return a.x < v; });
    const MapAnchor& hi = *it;
    const MapAnchor& lo = *(it - 1);
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.y + t * (hi.y - lo.y);
}

double BitextMap::x_at(double y) const {
    if (anchors_.empty()) throw std::domain_error("empty bitext map");
    if (y < 0.0 || y > space_.height) throw std::domain_error("y outside bitext space");
    if (y == anchors_.front().y) return anchors_.front().x;
    if (y == anchors_.back().y) return anchors_.back().x;
    auto it = std::lower_bound(anchors_.begin(), anchors_.end(), y,
                               [](const MapAnchor& a, double v) { return a.y < v; });
    const MapAnchor& hi = *it;
    const MapAnchor& lo = *(it - 1);
    const double t = (y - lo.y) / (hi.y - lo.y);
    return lo.x + t * (hi.x - lo.x);
}

std::vector<Point> BitextMap::source_points() const {
    std::vector<Point> out;
    for (std::size_t i = 1; i + 1 < anchors_.size(); ++i) {
        if (!anchors_[i].mer_corner) out.push_back(Point{anchors_[i].x, anchors_[i].y, 0, 0});
    }
    for (const Mer& m : mers_) out.insert(out.end(), m.enclosed.begin(), m.enclosed.end());
    std::sort(out.begin(), out.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    return out;
}

}  // namespace bimap
