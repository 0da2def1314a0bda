#include <doctest.h>

#include "helpers.hpp"
#include "polygen/errors.hpp"
#include "polygen/sampler.hpp"

using namespace polygen;

namespace {

Domain generous(int polygons) {
    Domain d;
    d.allowed_area = rectangle(0, 0, 100, 100);
    d.max_points = 10;
    d.min_polygons = 1;
    d.max_polygons = polygons;
    return d;
}

SamplerConfig config_for(const Domain& d, int n_polygons) {
    SamplerConfig c = default_sampler_config(d);
    c.n_polygons = n_polygons;
    return c;
}

}  // namespace

TEST_CASE("structure with the requested polygon count") {
    const Domain d = generous(3);
    StandardSampler sampler(d, config_for(d, 3));
    RandomSource rng(1);
    for (int t = 0; t < 50; ++t) {
        const Structure s = sampler.sample_structure(rng);
        CHECK(s.polygons.size() == 3);
        CHECK(validate(s, d).valid());
        for (const auto& p : s.polygons) {
            CHECK(p.size() >= 3);
            CHECK(p.size() <= 10);
        }
    }
}

TEST_CASE("batches are sized and deterministic") {
    const Domain d = generous(2);
    StandardSampler sampler(d, config_for(d, 2));
    RandomSource a(77), b(77);
    const auto first = sampler.sample_batch(30, a);
    const auto second = sampler.sample_batch(30, b);
    CHECK(first.size() == 30);
    CHECK(first == second);
    RandomSource c(5);
    CHECK(sampler.sample_batch(1, c).size() == 1);
    CHECK(sampler.batch_calls() == 3);
}

TEST_CASE("vertices stay inside the generating disk and radii shrink with polygon count") {
    const Domain d = generous(4);
    StandardSampler sampler(d, config_for(d, 4));
    std::vector<RegionTrace> trace;
    sampler.on_region = [&](const RegionTrace& t) { trace.push_back(t); };
    RandomSource rng(3);
    for (int t = 0; t < 30; ++t) {
        trace.clear();
        const Structure s = sampler.sample_structure(rng);
        REQUIRE(trace.size() >= s.polygons.size());
        const double limit = sampler.radius_limit();
        for (const auto& r : trace) {
            CHECK(r.radius > 0);
            CHECK(r.radius <= r.radius_bound + 1e-12);
            CHECK(r.radius_bound == doctest::Approx(limit / (r.polygon_index + 1)));
        }
    }
}

TEST_CASE("sampled vertices lie within the accepted radius") {
    Domain d = generous(1);
    StandardSampler sampler(d, config_for(d, 1));
    RegionTrace last;
    sampler.on_region = [&](const RegionTrace& t) { last = t; };
    RandomSource rng(21);
    for (int t = 0; t < 200; ++t) {
        const Structure s = sampler.sample_structure(rng);
        for (const Point& v : s.polygons[0].vertices) CHECK(distance(v, last.centroid) <= last.radius + 1e-9);
    }
}

TEST_CASE("open kind and prohibited elements") {
    RandomSource rng(4);
    for (int t = 0; t < 20; ++t) {
        const Domain d = testing::random_domain(rng, PolygonKind::Open, 3);
        StandardSampler sampler(d, config_for(d, 2));
        for (const auto& s : sampler.sample_batch(10, rng)) {
            CHECK(validate(s, d).valid());
            for (const auto& p : s.polygons) CHECK(p.kind == PolygonKind::Open);
        }
    }
}

TEST_CASE("exhaustion is reported") {
    Domain d = generous(1);
    d.prohibited.push_back(rectangle(1, 1, 99, 99));
    SamplerConfig c = config_for(d, 1);
    c.attempt_cap = 20;
    StandardSampler sampler(d, c);
    RandomSource rng(1);
    CHECK_THROWS_AS(sampler.sample_structure(rng), SamplingExhausted);
}

TEST_CASE("config checks") {
    const Domain d = generous(2);
    SamplerConfig c = config_for(d, 3);
    CHECK_THROWS_AS(StandardSampler(d, c), std::invalid_argument);
    c = config_for(d, 1);
    c.attempt_cap = 0;
    CHECK_THROWS_AS(StandardSampler(d, c), std::invalid_argument);
}
