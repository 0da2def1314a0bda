#include "polygen/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "polygen/errors.hpp"

namespace polygen {

std::vector<Objectives> Estimator::estimate(std::span<const Structure> batch) {
    calls_ += batch.size();
    std::vector<Objectives> out(batch.size());
    const std::size_t workers = concurrent_safe() ? std::min(threads_, batch.size()) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < batch.size(); ++i) out[i] = evaluate(batch[i]);
        return out;
    }
    // Strided split; each slot is written by exactly one worker.
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < batch.size(); i += workers) out[i] = evaluate(batch[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

ReferenceDistanceEstimator::ReferenceDistanceEstimator(Structure reference, double domain_diagonal,
                                                       std::size_t samples)
    : reference_(std::move(reference)), diagonal_(domain_diagonal), samples_(samples) {
    if (reference_.empty()) throw std::invalid_argument("reference distance: empty reference structure");
    if (!(diagonal_ > 0)) throw std::invalid_argument("reference distance: diagonal must be positive");
}

Objectives ReferenceDistanceEstimator::evaluate(const Structure& s) const {
    return {chamfer_distance(s, reference_, samples_) / diagonal_};
}

double well_road_distance(const Polygon& road, std::span<const Point> wells) {
    double total = 0.0;
    for (const Point& w : wells) total += point_boundary_distance(w, road);
    return total;
}

RoadNpvEstimator::RoadNpvEstimator(RoadScenario scenario) : scenario_(std::move(scenario)) {
    if (!(scenario_.r_road > 0)) throw std::invalid_argument("road: r_road must be positive");
}

double RoadNpvEstimator::npv(const Polygon& road) const {
    for (const Polygon& obstacle : scenario_.obstacles) {
        if (polygons_intersect(road, obstacle)) return std::numeric_limits<double>::infinity();
    }
    return scenario_.r_road * (polygon_length(road) + well_road_distance(road, scenario_.wells));
}

Objectives RoadNpvEstimator::evaluate(const Structure& s) const {
    if (s.polygons.size() != 1 || s.polygons.front().closed() || s.polygons.front().size() < 2) {
        throw EstimatorContractViolation("road: expected exactly one open polygon");
    }
    const Polygon& road = s.polygons.front();
    if (distance(road.vertices.front(), scenario_.endpoints.first) > kPointEps ||
        distance(road.vertices.back(), scenario_.endpoints.second) > kPointEps) {
        throw EstimatorContractViolation("road: endpoints are not pinned to the scenario endpoints");
    }
    return {npv(road)};
}

std::size_t blocking_segments(Point target, const WaveScenario& sc, const Structure& breakwaters) {
    const double len = sc.ray_length > 0 ? sc.ray_length : 1e12;
    const Point dir = sc.wind_direction * (-1.0 / norm(sc.wind_direction));
    const Point far = target + dir * len;
    std::size_t count = 0;
    for (const Polygon& poly : breakwaters.polygons) {
        for (std::size_t e = 0; e < poly.edge_count(); ++e) {
            const auto [a, b] = poly.edge(e);
            if (segments_intersect(target, far, a, b)) ++count;
        }
    }
    return count;
}

ShadowWaveEstimator::ShadowWaveEstimator(WaveScenario scenario) : scenario_(std::move(scenario)) {
    const double n = norm(scenario_.wind_direction);
    if (!(n > 0)) throw std::invalid_argument("waves: wind direction must be non-zero");
    if (std::abs(n - 1.0) > 1e-9) scenario_.wind_direction = scenario_.wind_direction * (1.0 / n);
    if (!(scenario_.protection >= 0)) throw std::invalid_argument("waves: protection coefficient must be >= 0");
}

Objectives ShadowWaveEstimator::evaluate(const Structure& s) const {
    double heights = 0.0;
    for (const Point& t : scenario_.targets) {
        const auto blocked = static_cast<double>(blocking_segments(t, scenario_, s));
        heights += scenario_.base_height * std::exp(-scenario_.protection * blocked);
    }
    return {heights, structure_length(s)};
}

CompositeEstimator::CompositeEstimator(EstimatorPtr cheap, EstimatorPtr accurate, double threshold)
    : cheap_(std::move(cheap)), accurate_(std::move(accurate)), threshold_(threshold) {
    if (!cheap_ || !accurate_) throw std::invalid_argument("composite: both estimators are required");
    if (cheap_->objective_count() != accurate_->objective_count()) {
        throw std::invalid_argument("composite: estimators disagree on the objective count");
    }
}

std::vector<Objectives> CompositeEstimator::estimate(std::span<const Structure> batch) {
    calls_ += batch.size();
    std::vector<Objectives> out = cheap_->estimate(batch);
    std::vector<std::size_t> gated;
    std::vector<Structure> subset;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].front() < threshold_) {
            gated.push_back(i);
            subset.push_back(batch[i]);
        }
    }
    if (!subset.empty()) {
        auto refined = accurate_->estimate(subset);
        for (std::size_t j = 0; j < gated.size(); ++j) out[gated[j]] = std::move(refined[j]);
    }
    return out;
}

Objectives CompositeEstimator::evaluate(const Structure&) const {
    throw std::logic_error("composite: gating is batch-level, use estimate()");
}

}  // namespace polygen
