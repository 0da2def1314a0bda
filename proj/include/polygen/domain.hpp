#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "polygen/geometry.hpp"
#include "polygen/random.hpp"

namespace polygen {

// Problem geometry: where polygons may live and how many of them.
struct Domain {
    Polygon allowed_area;
    std::vector<Polygon> prohibited;
    std::vector<Point> targets;
    int min_points = 3;
    int max_points = 10;
    int min_polygons = 1;
    int max_polygons = 1;
    PolygonKind polygon_kind = PolygonKind::Closed;
    // When set, the first and last vertex of every open polygon are pinned to
    // these points by postprocessing (fixed road start and end).
    std::optional<std::pair<Point, Point>> fixed_endpoints;
    int max_repair_rounds = 10;

    Box bounds() const { return bounding_box(allowed_area.vertices); }
    double diagonal() const { return bounds().diagonal(); }
    // Boundary clamping offset, 1e-6 of the diagonal.
    double inset() const { return 1e-6 * diagonal(); }
};

// Throws std::invalid_argument describing the first broken invariant.
void check_domain(const Domain& d);

// Axis-aligned rectangular allowed area.
Polygon rectangle(double min_x, double min_y, double max_x, double max_y);

// A point of the allowed area that lies in its interior (used as a fallback
// clamping anchor).
Point interior_anchor(const Domain& d);

// True when p is inside the allowed area and outside every prohibited element.
bool in_free_space(Point p, const Domain& d);

enum class Violation {
    OutOfBounds,
    SelfIntersection,
    MutualIntersection,
    ProhibitedIntersection,
    TooFewPoints,
    TooManyPoints,
    PolygonCountViolation,
};

std::string_view to_string(Violation v);

struct ViolationEntry {
    Violation kind;
    // Offending polygon, or -1 for structure-level violations.
    int polygon = -1;
    // Second polygon (MutualIntersection) or prohibited element index.
    int other = -1;

    friend bool operator==(const ViolationEntry&, const ViolationEntry&) = default;
};

struct ValidationReport {
    std::vector<ViolationEntry> violations;

    bool valid() const { return violations.empty(); }
    bool has(Violation v) const;
    bool polygon_has(int polygon, Violation v) const;
};

// Constraint identification: reports every violation, in check order.
ValidationReport validate(const Structure& s, const Domain& d);

// Supplies one new polygon that fits next to `existing` (used to refill a
// structure that fell under min_polygons).
using PolygonSource = std::function<Polygon(const Structure& existing, RandomSource& rng)>;

// Repairs `s` into validity by the fixed rule sequence: pin endpoints, clamp
// out-of-bounds vertices, untangle self-intersections, fix vertex counts,
// push polygons off prohibited elements and each other, enforce polygon-count
// bounds. Valid input comes back unchanged. Throws RepairFailed when
// max_repair_rounds pass without success.
Structure postprocess(const Structure& s, const Domain& d, RandomSource& rng,
                      const PolygonSource& refill = {});

}  // namespace polygen
