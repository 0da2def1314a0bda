#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "helpers.hpp"
#include "polygen/domain.hpp"
#include "polygen/errors.hpp"
#include "polygen/sampler.hpp"

using namespace polygen;
using testing::closed;
using testing::open;
using testing::unit_square;

namespace {

Domain box_domain() {
    Domain d;
    d.allowed_area = rectangle(0, 0, 100, 100);
    d.max_points = 10;
    d.max_polygons = 3;
    return d;
}

}  // namespace

TEST_CASE("validate examples") {
    Domain d = box_domain();
    CHECK(validate(Structure{{unit_square(10, 10, 5)}}, d).valid());

    const auto bowtie = validate(Structure{{closed({{10, 10}, {20, 20}, {20, 10}, {10, 20}})}}, d);
    CHECK(bowtie.has(Violation::SelfIntersection));

    d.prohibited.push_back(rectangle(40, 40, 60, 60));
    const auto hit = validate(Structure{{unit_square(35, 35, 10)}}, d);
    CHECK(hit.has(Violation::ProhibitedIntersection));
    CHECK(hit.polygon_has(0, Violation::ProhibitedIntersection));

    CHECK(validate(Structure{{unit_square(95, 50, 10)}}, d).has(Violation::OutOfBounds));
    CHECK(validate(Structure{{unit_square(10, 10, 5), unit_square(12, 12, 5)}}, d).has(Violation::MutualIntersection));
    CHECK(validate(Structure{}, d).has(Violation::PolygonCountViolation));
    CHECK(validate(Structure{{closed({{1, 1}, {2, 1}})}}, d).has(Violation::TooFewPoints));
}

TEST_CASE("validate is insensitive to polygon order") {
    Domain d = box_domain();
    d.prohibited.push_back(rectangle(40, 40, 60, 60));
    RandomSource rng(8);
    for (int t = 0; t < 200; ++t) {
        Structure s;
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        for (int i = 0; i < n; ++i) {
            s.polygons.push_back(testing::random_star(rng, {rng.uniform(0, 100), rng.uniform(0, 100)}, 15, 5));
        }
        Structure r = s;
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
        std::reverse(r.polygons.begin(), r.polygons.end());
        auto kinds = [](const ValidationReport& rep, const std::vector<int>* relabel) {
            std::multiset<std::tuple<int, int, int>> out;
            for (const auto& v : rep.violations) {
                int p = v.polygon, o = v.other;
                if (relabel && p >= 0) p = (*relabel)[p];
                if (relabel && v.kind == Violation::MutualIntersection) o = (*relabel)[o];
                if (v.kind == Violation::MutualIntersection && p > o) std::swap(p, o);
                out.insert({static_cast<int>(v.kind), p, o});
            }
            return out;
        };
        CHECK(kinds(validate(s, d), nullptr) == kinds(validate(r, d), &perm));
    }
}

TEST_CASE("postprocess returns valid input unchanged") {
    Domain d = box_domain();
    RandomSource rng(1);
    const Structure s{{unit_square(10, 10, 5), testing::random_star(rng, {60, 60}, 10, 7)}};
    REQUIRE(validate(s, d).valid());
    RandomSource r1(3);
    CHECK(postprocess(s, d, r1) == s);
}

TEST_CASE("postprocess untangles a bowtie") {
    Domain d = box_domain();
    RandomSource rng(2);
    const Structure s{{closed({{10, 10}, {20, 20}, {20, 10}, {10, 20}})}};
    const Structure out = postprocess(s, d, rng);
    const auto report = validate(out, d);
    CHECK(report.valid());
    CHECK_FALSE(report.has(Violation::SelfIntersection));
}

TEST_CASE("postprocess relocates one out-of-bounds vertex only") {
    Domain d = box_domain();
    RandomSource rng(4);
    const Structure s{{closed({{50, 50}, {70, 50}, {105, 70}, {50, 70}})}};
    const Structure out = postprocess(s, d, rng);
    REQUIRE(validate(out, d).valid());
    REQUIRE(out.polygons.size() == 1);
    const auto& v = out.polygons[0].vertices;
    REQUIRE(v.size() == 4);
    CHECK(point_in_polygon(v[2], d.allowed_area));
    CHECK(v[0] == Point{50, 50});
    CHECK(v[1] == Point{70, 50});
    CHECK(v[3] == Point{50, 70});
}

TEST_CASE("postprocess pins open endpoints") {
    Domain d = box_domain();
    d.polygon_kind = PolygonKind::Open;
    d.min_points = 2;
    d.max_polygons = 1;
    d.fixed_endpoints = std::make_pair(Point{5, 50}, Point{95, 50});
    RandomSource rng(6);
    const Structure s{{open({{10, 40}, {30, 80}, {60, 20}, {90, 60}})}};
    const Structure out = postprocess(s, d, rng);
    REQUIRE(validate(out, d).valid());
    CHECK(out.polygons[0].vertices.front() == Point{5, 50});
    CHECK(out.polygons[0].vertices.back() == Point{95, 50});
}

TEST_CASE("postprocess refills below min_polygons") {
    Domain d = box_domain();
    d.min_polygons = 2;
    d.max_polygons = 2;
    StandardSampler sampler(d, [&] {
        auto c = default_sampler_config(d);
        c.n_polygons = 2;
        return c;
    }());
    RandomSource rng(9);
    const Structure s{{unit_square(10, 10, 5)}};
    const Structure out = postprocess(s, d, rng, sampler.polygon_source());
    CHECK(validate(out, d).valid());
    CHECK(out.polygons.size() == 2);
}

TEST_CASE("postprocess either repairs or raises") {
    RandomSource rng(12);
    int repaired = 0;
    for (int t = 0; t < 300; ++t) {
        const Domain d = testing::random_domain(rng, t % 3 ? PolygonKind::Closed : PolygonKind::Open, 3);
        const Box b = d.bounds();
        Structure s;
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        for (int i = 0; i < n; ++i) {
            Polygon p;
            p.kind = d.polygon_kind;
            const int k = static_cast<int>(rng.uniform_int(2, 14));
            for (int j = 0; j < k; ++j) {
                p.vertices.push_back({rng.uniform(b.min_x - 20, b.max_x + 20), rng.uniform(b.min_y - 20, b.max_y + 20)});
            }
            s.polygons.push_back(p);
        }
        try {
            const Structure out = postprocess(s, d, rng);
            CHECK(validate(out, d).valid());
            ++repaired;
        } catch (const RepairFailed&) {
        }
    }
    CHECK(repaired > 200);
}

TEST_CASE("domain checks") {
    Domain d = box_domain();
    CHECK_NOTHROW(check_domain(d));
    d.min_points = 1;
    CHECK_THROWS_AS(check_domain(d), std::invalid_argument);
    d = box_domain();
    d.prohibited.push_back(rectangle(90, 90, 120, 120));
    CHECK_THROWS_AS(check_domain(d), std::invalid_argument);
    d = box_domain();
    d.fixed_endpoints = std::make_pair(Point{1, 1}, Point{2, 2});
    CHECK_THROWS_AS(check_domain(d), std::invalid_argument);
}

TEST_CASE("free space and anchors") {
    Domain d = box_domain();
    d.prohibited.push_back(rectangle(40, 40, 60, 60));
    CHECK(in_free_space({10, 10}, d));
    CHECK_FALSE(in_free_space({50, 50}, d));
    CHECK_FALSE(in_free_space({150, 50}, d));
    Domain l;
    l.allowed_area = closed({{0, 0}, {10, 0}, {10, 1}, {1, 1}, {1, 10}, {0, 10}});
    const Point a = interior_anchor(l);
    CHECK(point_in_polygon(a, l.allowed_area));
    CHECK(point_boundary_distance(a, l.allowed_area) > 0);
}
