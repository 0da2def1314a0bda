#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polygen/design.hpp"
#include "polygen/domain.hpp"
#include "polygen/estimators.hpp"
#include "polygen/optimizers.hpp"
#include "polygen/sampler.hpp"

namespace polygen {

struct EstimatorSpec {
    std::string name;
    // reference_distance
    std::optional<Structure> reference;
    std::size_t samples = 200;
    // road_npv
    std::vector<Point> wells;
    double r_road = 1000.0;
    // shadow_waves
    Point wind_direction{0.0, -1.0};
    double base_height = 2.5;
    double protection = 0.69314718055994530942;
    double ray_length = 0.0;
    // composite
    std::shared_ptr<EstimatorSpec> cheap;
    std::shared_ptr<EstimatorSpec> accurate;
    double threshold = 6.0;
};

struct OptimizerSpec {
    std::string name = "ga";
    std::size_t elite = 2;
    std::size_t tournament_size = 2;
    std::size_t archive_size = 15;
    std::size_t k_neighbors = 0;
};

enum class SweepAxis { Polygons, Vertices, DomainScale };

struct ScalingStudyConfig {
    SweepAxis axis = SweepAxis::Polygons;
    std::vector<double> values;
    std::size_t repetitions = 5;
};

struct ExperimentConfig {
    Domain domain;
    SamplerConfig sampler;
    EstimatorSpec estimator;
    OptimizerSpec optimizer;
    VariationConfig variation;
    DesignConfig design;
    std::size_t threads = 1;
    std::optional<ScalingStudyConfig> scaling_study;
    std::string output;
};

// Parses and validates the whole document. Unknown keys, wrong types and
// broken invariants raise ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text);

// Builds the estimator described by `spec`. A reference_distance estimator
// without an explicit reference samples one from the domain with `rng`.
EstimatorPtr build_estimator(const EstimatorSpec& spec, const ExperimentConfig& cfg, RandomSource& rng);

}  // namespace polygen
