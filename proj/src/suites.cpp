#include "polygen/suites.hpp"

#include <algorithm>
#include <stdexcept>

#include "polygen/sampler.hpp"

namespace polygen {

Domain synthetic_domain(double size, int n_polygons, int max_points) {
    Domain d;
    d.allowed_area = rectangle(0.0, 0.0, size, size);
    d.min_polygons = 1;
    d.max_polygons = n_polygons;
    d.max_points = max_points;
    d.polygon_kind = PolygonKind::Closed;
    return d;
}

Structure synthetic_reference(const Domain& d, RandomSource& rng) {
    SamplerConfig cfg = default_sampler_config(d);
    cfg.n_polygons = d.max_polygons;
    StandardSampler sampler(d, cfg);
    return sampler.sample_structure(rng);
}

ReconstructionOutcome reconstruct_reference(const Domain& d, const SamplerConfig& sampler_cfg,
                                            const ReconstructionSettings& settings, RandomSource& rng) {
    ReconstructionOutcome out;
    RandomSource ref_rng = rng.split();
    out.reference = synthetic_reference(d, ref_rng);

    StandardSampler sampler(d, sampler_cfg);
    ReferenceDistanceEstimator estimator(out.reference, d.diagonal(), settings.samples);
    Variation variation(d, sampler, settings.variation);
    GaConfig ga;
    ga.population_size = settings.population_size;
    ga.generations = settings.generations;
    ga.elite = settings.elite;
    ga.target_value = settings.target_value;
    RandomSource run_rng = rng.split();
    const GaResult result = ga_run(sampler, estimator, variation, ga, run_rng);
    out.best = result.best.structure;
    out.error = result.best.objectives[0];
    out.generations = result.generations_run;
    out.estimator_calls = estimator.total_calls();
    return out;
}

namespace {

Polygon square(Point c, double half) {
    return rectangle(c.x - half, c.y - half, c.x + half, c.y + half);
}

}  // namespace

RoadCase generate_road_case(const RoadCaseConfig& cfg, RandomSource& rng) {
    if (cfg.wells == 0) throw std::invalid_argument("road case: at least one well is required");
    const double f = cfg.field;
    RoadCase rc;
    Domain& d = rc.domain;
    d.allowed_area = rectangle(0.0, 0.0, f, f);
    d.polygon_kind = PolygonKind::Open;
    d.min_points = 2;
    d.max_points = cfg.max_points;
    d.min_polygons = 1;
    d.max_polygons = 1;

    RoadScenario& sc = rc.scenario;
    sc.r_road = cfg.r_road;
    sc.endpoints = {{0.05 * f, rng.uniform(0.35 * f, 0.65 * f)}, {0.95 * f, rng.uniform(0.35 * f, 0.65 * f)}};
    d.fixed_endpoints = sc.endpoints;
    for (std::size_t i = 0; i < cfg.wells; ++i) {
        sc.wells.push_back({rng.uniform(0.15 * f, 0.85 * f), rng.uniform(0.15 * f, 0.85 * f)});
    }

    const double area_goal = cfg.obstacle_coverage * f * f;
    const double clearance = 0.04 * f;
    double covered = 0.0;
    int attempts = 0;
    while (covered < area_goal) {
        if (++attempts > 10000) throw std::runtime_error("road case: could not place obstacles");
        const double half = rng.uniform(0.02 * f, 0.05 * f);
        const Point c{rng.uniform(0.1 * f, 0.9 * f), rng.uniform(0.1 * f, 0.9 * f)};
        const Polygon ob = square(c, half);
        auto too_close = [&](Point p) { return point_boundary_distance(p, ob) < clearance || point_in_polygon(p, ob); };
        if (too_close(sc.endpoints.first) || too_close(sc.endpoints.second)) continue;
        if (std::any_of(sc.wells.begin(), sc.wells.end(), too_close)) continue;
        const bool overlaps = std::any_of(sc.obstacles.begin(), sc.obstacles.end(),
                                          [&](const Polygon& other) { return polygons_intersect(ob, other); });
        if (overlaps) continue;
        sc.obstacles.push_back(ob);
        covered += 4.0 * half * half;
    }
    d.prohibited = sc.obstacles;
    return rc;
}

Polygon straight_road_baseline(const RoadScenario& sc) {
    const Point a = sc.endpoints.first;
    const Point axis = sc.endpoints.second - a;
    std::vector<Point> wells = sc.wells;
    std::stable_sort(wells.begin(), wells.end(),
                     [&](Point l, Point r) { return dot(l - a, axis) < dot(r - a, axis); });
    Polygon road;
    road.kind = PolygonKind::Open;
    road.vertices.push_back(a);
    road.vertices.insert(road.vertices.end(), wells.begin(), wells.end());
    road.vertices.push_back(sc.endpoints.second);
    return road;
}

WaveCase breakwater_case(int max_polygons, int max_points) {
    WaveCase wc;
    Domain& d = wc.domain;
    d.allowed_area = rectangle(0.0, 0.0, 100.0, 100.0);
    d.prohibited.push_back(rectangle(20.0, 0.0, 80.0, 25.0));
    d.polygon_kind = PolygonKind::Open;
    d.min_points = 2;
    d.max_points = max_points;
    d.min_polygons = 1;
    d.max_polygons = max_polygons;
    for (double x = 25.0; x <= 75.0; x += 10.0) d.targets.push_back({x, 12.0});

    WaveScenario& sc = wc.scenario;
    sc.targets = d.targets;
    sc.wind_direction = {0.0, -1.0};
    sc.ray_length = d.diagonal();
    return wc;
}

}  // namespace polygen
