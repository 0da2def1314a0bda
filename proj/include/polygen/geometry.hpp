#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace polygen {

// Coincident-vertex tolerance in domain units. Also used as the collinearity
// band of the orientation predicate.
inline constexpr double kPointEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

enum class PolygonKind { Open, Closed };

// Ordered vertex list. Open polygons are polylines (>= 2 vertices), closed
// polygons have an implicit edge from the last vertex back to the first.
struct Polygon {
    std::vector<Point> vertices;
    PolygonKind kind = PolygonKind::Closed;

    std::size_t size() const { return vertices.size(); }
    bool closed() const { return kind == PolygonKind::Closed; }
    std::size_t edge_count() const;
    std::pair<Point, Point> edge(std::size_t i) const;

    friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Structure {
    std::vector<Polygon> polygons;

    bool empty() const { return polygons.empty(); }
    std::size_t size() const { return polygons.size(); }

    friend bool operator==(const Structure&, const Structure&) = default;
};

struct Box {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double diagonal() const { return std::hypot(width(), height()); }
};

bool is_finite(Point p);
Box bounding_box(std::span<const Point> pts);

double polygon_length(const Polygon& poly);
double structure_length(const Structure& s);
// Arithmetic mean of the vertices.
Point polygon_centroid(const Polygon& poly);
double signed_area(const Polygon& poly);

Polygon rotate_polygon(const Polygon& poly, double angle_deg);
Polygon translate_polygon(const Polygon& poly, Point delta);
// Uniform scaling about the vertex mean.
Polygon resize_polygon(const Polygon& poly, double factor);

// > 0 when c lies left of a->b, < 0 right, 0 within kPointEps of the line.
int orientation(Point a, Point b, Point c);
// Closed-segment intersection; touching endpoints and collinear overlap count.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2);
// True when the two segments cross at a single interior point of both.
bool segments_cross_properly(Point p1, Point p2, Point q1, Point q2);

double point_segment_distance(Point p, Point a, Point b);
Point closest_point_on_segment(Point p, Point a, Point b);
// Minimum distance from p to any edge of poly (to the vertex for a 1-vertex list).
double point_boundary_distance(Point p, const Polygon& poly);

bool is_simple(const Polygon& poly);
// Boundary-inclusive. Throws std::invalid_argument for open polygons.
bool point_in_polygon(Point p, const Polygon& poly);
// Any edge pair touches, or a closed polygon contains the other one.
bool polygons_intersect(const Polygon& a, const Polygon& b);

// Equal-arclength resampling of every polygon boundary in the structure,
// samples split across polygons in proportion to their length with at least
// 8 per polygon.
std::vector<Point> resample_boundary(const Structure& s, std::size_t samples);
std::vector<Point> resample_polygon(const Polygon& poly, std::size_t samples);

// Symmetric mean nearest-neighbour distance between the resampled boundaries.
// Throws std::invalid_argument on an empty structure or samples < 16.
double chamfer_distance(const Structure& a, const Structure& b, std::size_t samples);

// Mean over `from` of the distance to the nearest point of `to`.
double mean_nearest_distance(std::span<const Point> from, std::span<const Point> to);

}  // namespace polygen
