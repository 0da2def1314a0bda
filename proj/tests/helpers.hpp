#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "polygen/domain.hpp"
#include "polygen/geometry.hpp"
#include "polygen/random.hpp"

namespace testing {

inline polygen::Polygon closed(std::vector<polygen::Point> v) { return {std::move(v), polygen::PolygonKind::Closed}; }
inline polygen::Polygon open(std::vector<polygen::Point> v) { return {std::move(v), polygen::PolygonKind::Open}; }

inline polygen::Polygon unit_square(double x = 0, double y = 0, double side = 1) {
    return closed({{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}});
}

// Random simple (star-shaped) polygon around c.
inline polygen::Polygon random_star(polygen::RandomSource& rng, polygen::Point c, double r, int n) {
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2 * std::numbers::pi));
    std::sort(angles.begin(), angles.end());
    std::vector<polygen::Point> v;
    for (double a : angles) {
        const double rr = rng.uniform(0.3 * r, r);
        v.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
    }
    return closed(v);
}

// Random rectangular domain with a few square prohibited elements.
inline polygen::Domain random_domain(polygen::RandomSource& rng, polygen::PolygonKind kind, int max_polygons) {
    polygen::Domain d;
    const double w = rng.uniform(50, 200);
    const double h = rng.uniform(50, 200);
    d.allowed_area = polygen::rectangle(0, 0, w, h);
    const int n_prohibited = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < n_prohibited; ++i) {
        const double s = rng.uniform(0.05, 0.12) * std::min(w, h);
        const double x = rng.uniform(0.1 * w, 0.9 * w - s);
        const double y = rng.uniform(0.1 * h, 0.9 * h - s);
        d.prohibited.push_back(polygen::rectangle(x, y, x + s, y + s));
    }
    d.polygon_kind = kind;
    d.min_points = kind == polygen::PolygonKind::Closed ? 3 : 2;
    d.max_points = static_cast<int>(rng.uniform_int(d.min_points + 1, 12));
    d.min_polygons = 1;
    d.max_polygons = max_polygons;
    return d;
}

}  // namespace testing
