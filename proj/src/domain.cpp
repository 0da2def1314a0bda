#include "polygen/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

bool edge_leaves_area(Point a, Point b, const Polygon& area) {
    for (std::size_t k = 0; k < area.edge_count(); ++k) {
        const auto [c, e] = area.edge(k);
        if (segments_cross_properly(a, b, c, e)) return true;
    }
    return !point_in_polygon(a + (b - a) * 0.5, area);
}

bool polygon_out_of_bounds(const Polygon& poly, const Polygon& area) {
    for (const Point& p : poly.vertices) {
        if (!is_finite(p) || !point_in_polygon(p, area)) return true;
    }
    for (std::size_t i = 0; i < poly.edge_count(); ++i) {
        const auto [a, b] = poly.edge(i);
        if (edge_leaves_area(a, b, area)) return true;
    }
    return false;
}

bool geometric(const Polygon& poly) {
    return poly.vertices.size() >= (poly.closed() ? 3u : 2u);
}

bool all_finite(const Polygon& poly) {
    return std::all_of(poly.vertices.begin(), poly.vertices.end(), is_finite);
}

void pin_endpoints(Structure& s, const Domain& d) {
    if (!d.fixed_endpoints) return;
    for (Polygon& poly : s.polygons) {
        if (poly.closed()) continue;
        if (poly.vertices.size() < 2) poly.vertices.resize(2, d.fixed_endpoints->first);
        poly.vertices.front() = d.fixed_endpoints->first;
        poly.vertices.back() = d.fixed_endpoints->second;
    }
}

bool pinned(const Polygon& poly, const Domain& d) {
    return d.fixed_endpoints.has_value() && !poly.closed();
}

Point clamp_inside(Point p, const Domain& d) {
    const Polygon& area = d.allowed_area;
    const double inset = d.inset();
    Point nearest = area.vertices.front();
    std::size_t nearest_edge = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < area.edge_count(); ++k) {
        const auto [a, b] = area.edge(k);
        const Point q = closest_point_on_segment(p, a, b);
        const double dist = distance(p, q);
        if (dist < best) {
            best = dist;
            nearest = q;
            nearest_edge = k;
        }
    }
    const auto [a, b] = area.edge(nearest_edge);
    const Point along = b - a;
    const double len = norm(along);
    const double ccw = signed_area(area) > 0 ? 1.0 : -1.0;
    if (len > 0) {
        const Point inward = Point{-along.y, along.x} * (ccw / len);
        const Point candidate = nearest + inward * inset;
        if (point_in_polygon(candidate, area) && point_boundary_distance(candidate, area) > 0.5 * inset) {
            return candidate;
        }
    }
    // Reflex corner: walk toward an interior anchor until strictly inside.
    const Point anchor = interior_anchor(d);
    const double span = distance(nearest, anchor);
    for (double step = inset; span > 0 && step <= span; step *= 2.0) {
        const Point candidate = nearest + (anchor - nearest) * (step / span);
        if (point_in_polygon(candidate, area) && point_boundary_distance(candidate, area) > 0.5 * inset) {
            return candidate;
        }
    }
    return anchor;
}

void drop_nonfinite(Polygon& poly) {
    std::erase_if(poly.vertices, [](Point p) { return !is_finite(p); });
}

void dedupe_consecutive(Polygon& poly, bool keep_ends) {
    auto& v = poly.vertices;
    std::vector<Point> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!out.empty() && distance(out.back(), v[i]) <= kPointEps) {
            if (keep_ends && i + 1 == v.size()) out.back() = v[i];
            continue;
        }
        out.push_back(v[i]);
    }
    if (poly.closed() && out.size() > 1 && distance(out.front(), out.back()) <= kPointEps) out.pop_back();
    v = std::move(out);
}

void untangle(Polygon& poly, const Domain& d) {
    if (!geometric(poly) || is_simple(poly)) return;
    auto& v = poly.vertices;
    if (pinned(poly, d)) {
        const Point start = d.fixed_endpoints->first;
        const Point axis = d.fixed_endpoints->second - start;
        std::stable_sort(v.begin() + 1, v.end() - 1, [&](Point a, Point b) {
            return dot(a - start, axis) < dot(b - start, axis);
        });
        dedupe_consecutive(poly, true);
        return;
    }
    const Point c = polygon_centroid(poly);
    auto angle = [&](Point p) { return std::atan2(p.y - c.y, p.x - c.x); };
    std::stable_sort(v.begin(), v.end(), [&](Point a, Point b) {
        const double ta = angle(a);
        const double tb = angle(b);
        if (ta != tb) return ta < tb;
        return distance(a, c) < distance(b, c);
    });
    if (!poly.closed() && v.size() > 2) {
        // Start the polyline just after the widest angular gap.
        std::size_t start = 0;
        double widest = -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t0 = angle(v[i]);
            double t1 = angle(v[(i + 1) % v.size()]);
            if (i + 1 == v.size()) t1 += 2.0 * 3.14159265358979323846;
            if (t1 - t0 > widest) {
                widest = t1 - t0;
                start = (i + 1) % v.size();
            }
        }
        std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start), v.end());
    }
    dedupe_consecutive(poly, false);
}

void trim_vertices(Polygon& poly, const Domain& d) {
    const auto limit = static_cast<std::size_t>(d.max_points);
    if (poly.vertices.size() <= limit) return;
    const Point c = polygon_centroid(poly);
    const bool keep_ends = pinned(poly, d);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        if (keep_ends && (i == 0 || i + 1 == poly.vertices.size())) continue;
        candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return distance(poly.vertices[a], c) > distance(poly.vertices[b], c);
    });
    const std::size_t excess = poly.vertices.size() - limit;
    std::vector<bool> drop(poly.vertices.size(), false);
    for (std::size_t k = 0; k < excess && k < candidates.size(); ++k) drop[candidates[k]] = true;
    std::vector<Point> kept;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        if (!drop[i]) kept.push_back(poly.vertices[i]);
    }
    poly.vertices = std::move(kept);
}

Point unit_direction(Point from, Point to, RandomSource& rng) {
    Point dir = to - from;
    double len = norm(dir);
    if (len <= kPointEps) {
        const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        return {std::cos(theta), std::sin(theta)};
    }
    return dir * (1.0 / len);
}

// Translation distance along `dir` after which every vertex of `mover` projects
// beyond every vertex of `obstacle` (a separating axis).
double separation_extent(const Polygon& mover, const Polygon& obstacle, Point dir, double inset) {
    double obstacle_max = -std::numeric_limits<double>::infinity();
    for (const Point& p : obstacle.vertices) obstacle_max = std::max(obstacle_max, dot(p, dir));
    double mover_min = std::numeric_limits<double>::infinity();
    for (const Point& p : mover.vertices) mover_min = std::min(mover_min, dot(p, dir));
    return std::max(0.0, obstacle_max - mover_min) + inset;
}

const Polygon* first_conflict(const Structure& s, std::size_t i, const Domain& d) {
    const Polygon& poly = s.polygons[i];
    for (const Polygon& obstacle : d.prohibited) {
        if (polygons_intersect(poly, obstacle)) return &obstacle;
    }
    for (std::size_t j = 0; j < i; ++j) {
        if (polygons_intersect(poly, s.polygons[j])) return &s.polygons[j];
    }
    return nullptr;
}

void separate(Structure& s, const Domain& d, RandomSource& rng) {
    constexpr int kAttempts = 3;
    std::vector<bool> remove(s.polygons.size(), false);
    for (std::size_t i = 0; i < s.polygons.size(); ++i) {
        if (!geometric(s.polygons[i])) continue;
        for (int attempt = 0; attempt < kAttempts; ++attempt) {
            const Polygon* other = first_conflict(s, i, d);
            if (other == nullptr) break;
            Polygon& poly = s.polygons[i];
            const Point dir = unit_direction(polygon_centroid(*other), polygon_centroid(poly), rng);
            poly = translate_polygon(poly, dir * separation_extent(poly, *other, dir, d.inset()));
        }
        if (first_conflict(s, i, d) != nullptr) remove[i] = true;
    }
    std::size_t k = 0;
    std::erase_if(s.polygons, [&](const Polygon&) { return remove[k++]; });
}

void enforce_count(Structure& s, const Domain& d, RandomSource& rng, const PolygonSource& refill) {
    while (static_cast<int>(s.polygons.size()) > d.max_polygons) {
        auto smallest = std::min_element(s.polygons.begin(), s.polygons.end(), [](const Polygon& a, const Polygon& b) {
            return polygon_length(a) < polygon_length(b);
        });
        s.polygons.erase(smallest);
    }
    if (!refill) return;
    while (static_cast<int>(s.polygons.size()) < d.min_polygons) {
        s.polygons.push_back(refill(s, rng));
    }
}

bool individually_flagged(const ValidationReport& report, int polygon) {
    for (const auto& v : report.violations) {
        if (v.polygon != polygon) continue;
        if (v.kind == Violation::OutOfBounds || v.kind == Violation::SelfIntersection ||
            v.kind == Violation::ProhibitedIntersection) {
            return true;
        }
    }
    return false;
}

}  // namespace

Polygon rectangle(double min_x, double min_y, double max_x, double max_y) {
    return Polygon{{{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}}, PolygonKind::Closed};
}

void check_domain(const Domain& d) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("domain: " + msg); };
    if (!d.allowed_area.closed() || d.allowed_area.size() < 3) fail("allowed area must be a closed polygon");
    if (!is_simple(d.allowed_area)) fail("allowed area must be simple");
    for (std::size_t i = 0; i < d.prohibited.size(); ++i) {
        const Polygon& p = d.prohibited[i];
        if (!p.closed() || !is_simple(p)) fail("prohibited element " + std::to_string(i) + " must be closed and simple");
        for (const Point& v : p.vertices) {
            if (!point_in_polygon(v, d.allowed_area)) fail("prohibited element " + std::to_string(i) + " leaves the allowed area");
        }
    }
    if (d.min_points < 2 || d.min_points > d.max_points) fail("need 2 <= min_points <= max_points");
    if (d.min_polygons < 1 || d.min_polygons > d.max_polygons) fail("need 1 <= min_polygons <= max_polygons");
    if (d.polygon_kind == PolygonKind::Closed && d.min_points < 3) fail("closed polygons need min_points >= 3");
    if (d.max_repair_rounds < 1) fail("max_repair_rounds must be positive");
    if (d.fixed_endpoints) {
        if (d.polygon_kind != PolygonKind::Open) fail("fixed endpoints require open polygons");
        if (!in_free_space(d.fixed_endpoints->first, d) || !in_free_space(d.fixed_endpoints->second, d)) {
            fail("fixed endpoints must lie in free space");
        }
    }
}

Point interior_anchor(const Domain& d) {
    const Polygon& area = d.allowed_area;
    const Point mean = polygon_centroid(area);
    const double inset = d.inset();
    if (point_in_polygon(mean, area) && point_boundary_distance(mean, area) > 10.0 * inset) return mean;
    const Box box = d.bounds();
    constexpr int kGrid = 64;
    Point best = mean;
    double clearance = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const Point p{box.min_x + box.width() * (i + 0.5) / kGrid, box.min_y + box.height() * (j + 0.5) / kGrid};
            if (!point_in_polygon(p, area)) continue;
            const double c = point_boundary_distance(p, area);
            if (c > clearance) {
                clearance = c;
                best = p;
            }
        }
    }
    return best;
}

bool in_free_space(Point p, const Domain& d) {
    if (!point_in_polygon(p, d.allowed_area)) return false;
    return std::none_of(d.prohibited.begin(), d.prohibited.end(),
                        [&](const Polygon& q) { return point_in_polygon(p, q); });
}

std::string_view to_string(Violation v) {
    switch (v) {
        case Violation::OutOfBounds: return "OutOfBounds";
        case Violation::SelfIntersection: return "SelfIntersection";
        case Violation::MutualIntersection: return "MutualIntersection";
        case Violation::ProhibitedIntersection: return "ProhibitedIntersection";
        case Violation::TooFewPoints: return "TooFewPoints";
        case Violation::TooManyPoints: return "TooManyPoints";
        case Violation::PolygonCountViolation: return "PolygonCountViolation";
    }
    return "Unknown";
}

bool ValidationReport::has(Violation v) const {
    return std::any_of(violations.begin(), violations.end(), [&](const ViolationEntry& e) { return e.kind == v; });
}

bool ValidationReport::polygon_has(int polygon, Violation v) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const ViolationEntry& e) { return e.kind == v && e.polygon == polygon; });
}

ValidationReport validate(const Structure& s, const Domain& d) {
    ValidationReport report;
    const auto n = static_cast<int>(s.polygons.size());
    std::vector<bool> checkable(s.polygons.size());
    for (int i = 0; i < n; ++i) {
        const Polygon& poly = s.polygons[static_cast<std::size_t>(i)];
        checkable[static_cast<std::size_t>(i)] = geometric(poly) && all_finite(poly);
    }
    for (int i = 0; i < n; ++i) {
        const Polygon& poly = s.polygons[static_cast<std::size_t>(i)];
        if (!poly.vertices.empty() && polygon_out_of_bounds(poly, d.allowed_area)) {
            report.violations.push_back({Violation::OutOfBounds, i});
        }
    }
    for (int i = 0; i < n; ++i) {
        if (checkable[static_cast<std::size_t>(i)] && !is_simple(s.polygons[static_cast<std::size_t>(i)])) {
            report.violations.push_back({Violation::SelfIntersection, i});
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!checkable[static_cast<std::size_t>(i)] || !checkable[static_cast<std::size_t>(j)]) continue;
            if (polygons_intersect(s.polygons[static_cast<std::size_t>(i)], s.polygons[static_cast<std::size_t>(j)])) {
                report.violations.push_back({Violation::MutualIntersection, i, j});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!checkable[static_cast<std::size_t>(i)]) continue;
        for (std::size_t k = 0; k < d.prohibited.size(); ++k) {
            if (polygons_intersect(s.polygons[static_cast<std::size_t>(i)], d.prohibited[k])) {
                report.violations.push_back({Violation::ProhibitedIntersection, i, static_cast<int>(k)});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const Polygon& poly = s.polygons[static_cast<std::size_t>(i)];
        const auto count = static_cast<int>(poly.vertices.size());
        const int floor = std::max(d.min_points, poly.closed() ? 3 : 2);
        if (count < floor) report.violations.push_back({Violation::TooFewPoints, i});
        if (count > d.max_points) report.violations.push_back({Violation::TooManyPoints, i});
    }
    if (n < d.min_polygons || n > d.max_polygons) {
        report.violations.push_back({Violation::PolygonCountViolation});
    }
    return report;
}

Structure postprocess(const Structure& s, const Domain& d, RandomSource& rng, const PolygonSource& refill) {
    Structure cur = s;
    pin_endpoints(cur, d);
    ValidationReport report = validate(cur, d);
    if (report.valid()) return cur;

    for (int round = 0; round < d.max_repair_rounds; ++round) {
        if (round >= 2) {
            // Polygons that survived two rounds of local repair are replaced.
            int idx = 0;
            std::erase_if(cur.polygons, [&](const Polygon&) { return individually_flagged(report, idx++); });
        }
        for (Polygon& poly : cur.polygons) {
            drop_nonfinite(poly);
            for (Point& p : poly.vertices) {
                if (!point_in_polygon(p, d.allowed_area)) p = clamp_inside(p, d);
            }
        }
        for (Polygon& poly : cur.polygons) {
            dedupe_consecutive(poly, pinned(poly, d));
            untangle(poly, d);
        }
        std::erase_if(cur.polygons, [&](const Polygon& poly) {
            return static_cast<int>(poly.vertices.size()) < std::max(d.min_points, poly.closed() ? 3 : 2);
        });
        for (Polygon& poly : cur.polygons) trim_vertices(poly, d);
        separate(cur, d, rng);
        enforce_count(cur, d, rng, refill);
        pin_endpoints(cur, d);
        report = validate(cur, d);
        if (report.valid()) return cur;
    }
    throw RepairFailed("postprocess: structure still invalid after " + std::to_string(d.max_repair_rounds) +
                       " repair rounds");
}

}  // namespace polygen
