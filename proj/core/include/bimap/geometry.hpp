#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Bitext-space geometry: the rectangle spanned by two texts measured in
// characters, correspondence points inside it, and the piecewise-linear
// injective map built from them.

namespace bimap {

struct Token {
    std::u32string surface;  // case-folded form used for matching
    std::size_t start = 0;   // offset in scalar values
    std::size_t length = 0;

    double mean_pos() const { return static_cast<double>(start) + (static_cast<double>(length) - 1.0) / 2.0; }
};

// Mean character position of a token; fractional for even lengths.
double mean_position(const Token& t);

struct BitextSpace {
    double width = 0;   // x-axis text length, characters
    double height = 0;  // y-axis text length, characters

    double slope() const { return height / width; }
    double diagonal() const;
};

struct Point {
    double x = 0;
    double y = 0;
    std::size_t x_index = 0;  // token ordinal on the x axis
    std::size_t y_index = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Signed perpendicular distance from the main diagonal; positive above.
double perp_displacement(const Point& p, const BitextSpace& space);

// Same quantity relative to an arbitrary reference slope through the origin.
// Any line parallel to that slope induces the same ordering.
double displacement_from_slope(const Point& p, double slope);

// Axis-aligned search region. Its lower-left corner is exclusive: the
// expanding search only looks strictly up and to the right of its anchor.
struct SearchRectangle {
    double x0 = 0;  // lower-left, exclusive
    double y0 = 0;
    double width = 0;
    double height = 0;

    double x1() const { return x0 + width; }
    double y1() const { return y0 + height; }
    bool contains(double x, double y) const {
        return x > x0 && x <= x1() && y > y0 && y <= y1();
    }
};

// Minimum enclosing rectangle that replaces a non-monotonic point run.
struct Mer {
    Point lower_left;
    Point upper_right;
    std::vector<Point> enclosed;
};

struct MapAnchor {
    double x = 0;
    double y = 0;
    bool mer_corner = false;

    friend bool operator==(const MapAnchor&, const MapAnchor&) = default;
};

// Piecewise-linear bijection [0,width] -> [0,height]. Anchors are strictly
// increasing in both coordinates and always include (0,0) and
// (width,height). Non-monotonic point runs are kept in `mers`; the map
// interpolates through each MER's lower-left and upper-right corners.
class BitextMap {
public:
    BitextMap() = default;
    // Validates monotonicity and the endpoint anchors.
    BitextMap(std::vector<MapAnchor> anchors, std::vector<Mer> mers, BitextSpace space);

    // Linear interpolation between the bracketing anchors.
    // Throws std::domain_error outside [0, width].
    double y_at(double x) const;

    // Inverse interpolation; well-defined because the map is injective.
    double x_at(double y) const;

    const std::vector<MapAnchor>& anchors() const { return anchors_; }
    const std::vector<Mer>& mers() const { return mers_; }
    const BitextSpace& space() const { return space_; }
    bool empty() const { return anchors_.empty(); }

    // Interior anchors plus MER-enclosed points: the original accepted
    // correspondence points the map was built from.
    std::vector<Point> source_points() const;

private:
    std::vector<MapAnchor> anchors_;
    std::vector<Mer> mers_;
    BitextSpace space_;
};

}  // namespace bimap
