#include "polygen/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace polygen {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool within_box(Point a, Point b, Point p) {
    return p.x >= std::min(a.x, b.x) - kPointEps && p.x <= std::max(a.x, b.x) + kPointEps &&
           p.y >= std::min(a.y, b.y) - kPointEps && p.y <= std::max(a.y, b.y) + kPointEps;
}

bool boxes_overlap(const Box& a, const Box& b) {
    return a.min_x <= b.max_x + kPointEps && b.min_x <= a.max_x + kPointEps &&
           a.min_y <= b.max_y + kPointEps && b.min_y <= a.max_y + kPointEps;
}

}  // namespace

std::size_t Polygon::edge_count() const {
    const std::size_t n = vertices.size();
    if (n < 2) return 0;
    return closed() ? n : n - 1;
}

std::pair<Point, Point> Polygon::edge(std::size_t i) const {
    const std::size_t n = vertices.size();
    return {vertices[i], vertices[(i + 1) % n]};
}

bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Box bounding_box(std::span<const Point> pts) {
    Box box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : pts) {
        box.min_x = std::min(box.min_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_x = std::max(box.max_x, p.x);
        box.max_y = std::max(box.max_y, p.y);
    }
    return box;
}

double polygon_length(const Polygon& poly) {
    double total = 0.0;
    for (std::size_t i = 0; i < poly.edge_count(); ++i) {
        const auto [a, b] = poly.edge(i);
        total += distance(a, b);
    }
    return total;
}

double structure_length(const Structure& s) {
    double total = 0.0;
    for (const Polygon& p : s.polygons) total += polygon_length(p);
    return total;
}

Point polygon_centroid(const Polygon& poly) {
    Point sum{};
    for (const Point& p : poly.vertices) sum = sum + p;
    const double n = static_cast<double>(poly.vertices.size());
    return n > 0 ? sum * (1.0 / n) : sum;
}

double signed_area(const Polygon& poly) {
    const std::size_t n = poly.vertices.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += cross(poly.vertices[i], poly.vertices[(i + 1) % n]);
    }
    return 0.5 * acc;
}

Polygon rotate_polygon(const Polygon& poly, double angle_deg) {
    if (angle_deg == 0.0) return poly;
    const Point c = polygon_centroid(poly);
    const double rad = angle_deg * kPi / 180.0;
    const double cs = std::cos(rad);
    const double sn = std::sin(rad);
    Polygon out = poly;
    for (Point& p : out.vertices) {
        const Point d = p - c;
        p = {c.x + d.x * cs - d.y * sn, c.y + d.x * sn + d.y * cs};
    }
    return out;
}

Polygon translate_polygon(const Polygon& poly, Point delta) {
    Polygon out = poly;
    for (Point& p : out.vertices) p = p + delta;
    return out;
}

Polygon resize_polygon(const Polygon& poly, double factor) {
    const Point c = polygon_centroid(poly);
    Polygon out = poly;
    for (Point& p : out.vertices) p = c + (p - c) * factor;
    return out;
}

int orientation(Point a, Point b, Point c) {
    const double o = cross(b - a, c - a);
    const double scale = norm(b - a);
    if (std::abs(o) <= kPointEps * scale) return 0;
    return o > 0 ? 1 : -1;
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
    const int d1 = orientation(q1, q2, p1);
    const int d2 = orientation(q1, q2, p2);
    const int d3 = orientation(p1, p2, q1);
    const int d4 = orientation(p1, p2, q2);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && within_box(q1, q2, p1) && point_segment_distance(p1, q1, q2) <= kPointEps) return true;
    if (d2 == 0 && within_box(q1, q2, p2) && point_segment_distance(p2, q1, q2) <= kPointEps) return true;
    if (d3 == 0 && within_box(p1, p2, q1) && point_segment_distance(q1, p1, p2) <= kPointEps) return true;
    if (d4 == 0 && within_box(p1, p2, q2) && point_segment_distance(q2, p1, p2) <= kPointEps) return true;
    return false;
}

bool segments_cross_properly(Point p1, Point p2, Point q1, Point q2) {
    return orientation(q1, q2, p1) * orientation(q1, q2, p2) < 0 &&
           orientation(p1, p2, q1) * orientation(p1, p2, q2) < 0;
}

Point closest_point_on_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return a;
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return a + ab * t;
}

double point_segment_distance(Point p, Point a, Point b) {
    return distance(p, closest_point_on_segment(p, a, b));
}

double point_boundary_distance(Point p, const Polygon& poly) {
    if (poly.vertices.size() == 1) return distance(p, poly.vertices.front());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.edge_count(); ++i) {
        const auto [a, b] = poly.edge(i);
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return best;
}

bool is_simple(const Polygon& poly) {
    const std::size_t n = poly.vertices.size();
    if (n < (poly.closed() ? 3u : 2u)) return false;
    for (const Point& p : poly.vertices) {
        if (!is_finite(p)) return false;
    }
    const std::size_t edges = poly.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        const auto [a, b] = poly.edge(i);
        if (distance(a, b) <= kPointEps) return false;
    }
    for (std::size_t i = 0; i < edges; ++i) {
        for (std::size_t j = i + 1; j < edges; ++j) {
            const auto [a1, a2] = poly.edge(i);
            const auto [b1, b2] = poly.edge(j);
            const bool next = (j == i + 1);
            const bool wrap = poly.closed() && i == 0 && j == edges - 1;
            if (!next && !wrap) {
                if (segments_intersect(a1, a2, b1, b2)) return false;
                continue;
            }
            // Adjacent edges share one vertex; they may only meet there.
            const Point shared = next ? a2 : a1;
            const Point u = next ? a1 : a2;
            const Point w = next ? b2 : b1;
            if (orientation(u, shared, w) == 0 && dot(u - shared, w - shared) > 0) return false;
        }
    }
    return true;
}

bool point_in_polygon(Point p, const Polygon& poly) {
    if (!poly.closed()) throw std::invalid_argument("point_in_polygon: polygon is open");
    const std::size_t n = poly.vertices.size();
    if (n < 3) throw std::invalid_argument("point_in_polygon: closed polygon needs 3 vertices");
    if (point_boundary_distance(p, poly) <= kPointEps) return true;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& vi = poly.vertices[i];
        const Point& vj = poly.vertices[j];
        if ((vi.y > p.y) != (vj.y > p.y)) {
            const double x_cross = vj.x + (p.y - vj.y) * (vi.x - vj.x) / (vi.y - vj.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool polygons_intersect(const Polygon& a, const Polygon& b) {
    if (a.vertices.empty() || b.vertices.empty()) return false;
    if (!boxes_overlap(bounding_box(a.vertices), bounding_box(b.vertices))) return false;
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        const auto [a1, a2] = a.edge(i);
        for (std::size_t j = 0; j < b.edge_count(); ++j) {
            const auto [b1, b2] = b.edge(j);
            if (segments_intersect(a1, a2, b1, b2)) return true;
        }
    }
    if (b.closed() && b.size() >= 3 && point_in_polygon(a.vertices.front(), b)) return true;
    if (a.closed() && a.size() >= 3 && point_in_polygon(b.vertices.front(), a)) return true;
    return false;
}

std::vector<Point> resample_polygon(const Polygon& poly, std::size_t samples) {
    std::vector<Point> out;
    if (poly.vertices.empty() || samples == 0) return out;
    const double total = polygon_length(poly);
    if (total <= 0.0 || poly.edge_count() == 0) {
        out.assign(samples, poly.vertices.front());
        return out;
    }
    out.reserve(samples);
    const double step = poly.closed() || samples < 2 ? total / static_cast<double>(samples)
                                                     : total / static_cast<double>(samples - 1);
    std::size_t edge = 0;
    double edge_start = 0.0;
    double edge_len = distance(poly.edge(0).first, poly.edge(0).second);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = std::min(step * static_cast<double>(k), total);
        while (edge + 1 < poly.edge_count() && t > edge_start + edge_len) {
            edge_start += edge_len;
            ++edge;
            edge_len = distance(poly.edge(edge).first, poly.edge(edge).second);
        }
        const auto [a, b] = poly.edge(edge);
        const double local = edge_len > 0.0 ? std::clamp((t - edge_start) / edge_len, 0.0, 1.0) : 0.0;
        out.push_back(a + (b - a) * local);
    }
    return out;
}

std::vector<Point> resample_boundary(const Structure& s, std::size_t samples) {
    constexpr std::size_t kMinPerPolygon = 8;
    const std::size_t count = s.polygons.size();
    std::vector<std::size_t> alloc(count, kMinPerPolygon);
    if (count > 0 && samples > kMinPerPolygon * count) {
        std::vector<double> lengths(count);
        for (std::size_t i = 0; i < count; ++i) lengths[i] = polygon_length(s.polygons[i]);
        const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
        const std::size_t extra = samples - kMinPerPolygon * count;
        // Largest-remainder apportionment of the extra samples.
        std::vector<double> quota(count);
        std::size_t given = 0;
        for (std::size_t i = 0; i < count; ++i) {
            quota[i] = total > 0.0 ? static_cast<double>(extra) * lengths[i] / total
                                   : static_cast<double>(extra) / static_cast<double>(count);
            const auto whole = static_cast<std::size_t>(std::floor(quota[i]));
            alloc[i] += whole;
            given += whole;
            quota[i] -= static_cast<double>(whole);
        }
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t l, std::size_t r) { return quota[l] > quota[r]; });
        for (std::size_t k = 0; given < extra; ++k, ++given) alloc[order[k % count]] += 1;
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) {
        auto pts = resample_polygon(s.polygons[i], alloc[i]);
        out.insert(out.end(), pts.begin(), pts.end());
    }
    return out;
}

double mean_nearest_distance(std::span<const Point> from, std::span<const Point> to) {
    if (from.empty() || to.empty()) throw std::invalid_argument("mean_nearest_distance: empty point set");
    std::vector<Point> sorted(to.begin(), to.end());
    std::sort(sorted.begin(), sorted.end(), [](Point a, Point b) { return a.x < b.x; });
    double sum = 0.0;
    for (const Point& p : from) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), p.x,
                                   [](Point q, double x) { return q.x < x; });
        double best = std::numeric_limits<double>::infinity();
        for (auto r = it; r != sorted.end() && r->x - p.x < best; ++r) best = std::min(best, distance(p, *r));
        for (auto l = it; l != sorted.begin();) {
            --l;
            if (p.x - l->x >= best) break;
            best = std::min(best, distance(p, *l));
        }
        sum += best;
    }
    return sum / static_cast<double>(from.size());
}

double chamfer_distance(const Structure& a, const Structure& b, std::size_t samples) {
    if (a.empty() || b.empty()) throw std::invalid_argument("chamfer_distance: empty structure");
    if (samples < 16) throw std::invalid_argument("chamfer_distance: need at least 16 samples");
    const auto pa = resample_boundary(a, samples);
    const auto pb = resample_boundary(b, samples);
    return 0.5 * (mean_nearest_distance(pa, pb) + mean_nearest_distance(pb, pa));
}

}  // namespace polygen
