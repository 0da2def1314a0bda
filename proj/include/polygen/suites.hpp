#pragma once

#include <cstddef>

#include "polygen/domain.hpp"
#include "polygen/estimators.hpp"
#include "polygen/optimizers.hpp"
#include "polygen/random.hpp"
#include "polygen/sampler.hpp"

namespace polygen {

// Square field [0, size]^2 holding `n_polygons` closed polygons.
Domain synthetic_domain(double size, int n_polygons, int max_points = 10);

// Reference structure drawn by the standard sampler for reconstruction tasks.
Structure synthetic_reference(const Domain& d, RandomSource& rng);

struct ReconstructionSettings {
    std::size_t population_size = 30;
    std::size_t generations = 100;
    std::size_t elite = 2;
    std::size_t samples = 200;
    std::optional<double> target_value;
    VariationConfig variation;
};

struct ReconstructionOutcome {
    Structure reference;
    Structure best;
    // Normalized chamfer error of `best`.
    double error = 0.0;
    std::size_t generations = 0;
    std::size_t estimator_calls = 0;
};

// Samples a fresh reference in `d`, then runs the GA against the
// reference-distance objective starting from an independent population.
ReconstructionOutcome reconstruct_reference(const Domain& d, const SamplerConfig& sampler_cfg,
                                            const ReconstructionSettings& settings, RandomSource& rng);

struct RoadCaseConfig {
    double field = 100.0;
    std::size_t wells = 5;
    double obstacle_coverage = 0.02;
    double r_road = 1000.0;
    int max_points = 12;
};

struct RoadCase {
    Domain domain;
    RoadScenario scenario;
};

// Random field with fixed endpoints near the left and right edges, wells in
// the interior and square obstacles added until they cover the requested
// fraction of the field. Obstacles keep clear of wells and endpoints.
RoadCase generate_road_case(const RoadCaseConfig& cfg, RandomSource& rng);

// Polyline from the start endpoint through the wells in order of their
// projection onto the endpoint axis, then to the end endpoint.
Polygon straight_road_baseline(const RoadScenario& sc);

struct WaveCase {
    Domain domain;
    WaveScenario scenario;
};

// Bay with a protected harbour strip along the shore and targets inside it;
// waves arrive from the open-sea side. Breakwaters are open polylines.
WaveCase breakwater_case(int max_polygons = 3, int max_points = 6);

}  // namespace polygen
