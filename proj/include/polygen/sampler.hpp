#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "polygen/domain.hpp"
#include "polygen/geometry.hpp"
#include "polygen/random.hpp"

namespace polygen {

struct SamplerConfig {
    // Bounding rectangle of the allowed area; centroids are drawn uniformly on it.
    Box rect_area;
    int max_points = 10;
    int n_polygons = 1;
    // Rejections allowed per polygon before SamplingExhausted.
    int attempt_cap = 1000;
    // Largest centroid-region radius; 0 means half the shorter side of rect_area.
    double max_radius = 0.0;
};

// Defaults derived from the domain: its bounding box, max_points and min_polygons.
SamplerConfig default_sampler_config(const Domain& d);
void check_sampler_config(const SamplerConfig& cfg, const Domain& d);

// Pluggable sampler contract. Implementations must emit only structures that
// pass validate() for the domain they were built for.
class Sampler {
public:
    virtual ~Sampler() = default;
    virtual std::vector<Structure> sample_batch(std::size_t count, RandomSource& rng) = 0;
    virtual Structure sample_structure(RandomSource& rng) = 0;
    // One polygon that fits beside `existing`.
    virtual Polygon sample_polygon(const Structure& existing, RandomSource& rng) = 0;

    std::size_t batch_calls() const { return batch_calls_; }

    // Adapter for postprocess refills and the AddPolygon mutation.
    PolygonSource polygon_source() {
        return [this](const Structure& existing, RandomSource& rng) { return sample_polygon(existing, rng); };
    }

protected:
    std::size_t batch_calls_ = 0;
};

// Observation hook for the centroid-region loop (radius bound, accepted radius).
struct RegionTrace {
    int polygon_index = 0;
    double radius_bound = 0.0;
    double radius = 0.0;
    Point centroid;
};

// Centroid-region sampler: uniform centroid in free space, uniform radius on
// (0, R_max / n_poly] whose disk must be clear, then normally distributed
// vertices (sigma = r/3) clamped into the disk and ordered by polar angle.
class StandardSampler : public Sampler {
public:
    StandardSampler(Domain domain, SamplerConfig cfg);

    std::vector<Structure> sample_batch(std::size_t count, RandomSource& rng) override;
    Structure sample_structure(RandomSource& rng) override;
    Polygon sample_polygon(const Structure& existing, RandomSource& rng) override;

    const Domain& domain() const { return domain_; }
    const SamplerConfig& config() const { return cfg_; }
    double radius_limit() const { return radius_limit_; }

    // Optional observer, called once per accepted centroid region.
    std::function<void(const RegionTrace&)> on_region;

private:
    Polygon draw_polygon(const Structure& existing, RandomSource& rng, Point& centroid, double& radius);
    bool region_clear(Point centre, double radius, const Structure& existing) const;

    Domain domain_;
    SamplerConfig cfg_;
    double radius_limit_;
};

}  // namespace polygen
