#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "polygen/domain.hpp"
#include "polygen/geometry.hpp"
#include "polygen/pareto.hpp"

namespace polygen {

// Estimator contract: a fixed objective count, a concurrency declaration and a
// monotone call counter that grows by the batch size on every estimate().
class Estimator {
public:
    virtual ~Estimator() = default;

    virtual std::size_t objective_count() const = 0;
    virtual bool concurrent_safe() const { return true; }

    // Evaluates the batch; may fan out over `threads` workers when concurrent_safe().
    virtual std::vector<Objectives> estimate(std::span<const Structure> batch);

    std::size_t calls() const { return calls_.load(); }
    // Calls summed over this estimator and every estimator it delegates to.
    virtual std::size_t total_calls() const { return calls(); }

    void set_threads(std::size_t threads) { threads_ = threads == 0 ? 1 : threads; }

protected:
    virtual Objectives evaluate(const Structure& s) const = 0;

    std::atomic<std::size_t> calls_{0};
    std::size_t threads_ = 1;
};

using EstimatorPtr = std::shared_ptr<Estimator>;

// Objective = chamfer distance to the reference / domain diagonal.
class ReferenceDistanceEstimator : public Estimator {
public:
    ReferenceDistanceEstimator(Structure reference, double domain_diagonal, std::size_t samples = 200);

    std::size_t objective_count() const override { return 1; }
    const Structure& reference() const { return reference_; }

protected:
    Objectives evaluate(const Structure& s) const override;

private:
    Structure reference_;
    double diagonal_;
    std::size_t samples_;
};

struct RoadScenario {
    std::vector<Point> wells;
    std::pair<Point, Point> endpoints;
    // Cost per unit of road length.
    double r_road = 1000.0;
    std::vector<Polygon> obstacles;
};

// Sum over wells of the distance to the nearest point of the road polyline.
double well_road_distance(const Polygon& road, std::span<const Point> wells);

// NPV_road = r_road * (road length + summed well-to-road distance). Roads that
// touch an obstacle score +infinity. Throws EstimatorContractViolation unless
// the structure is a single open polygon pinned to the scenario endpoints.
class RoadNpvEstimator : public Estimator {
public:
    explicit RoadNpvEstimator(RoadScenario scenario);

    std::size_t objective_count() const override { return 1; }
    const RoadScenario& scenario() const { return scenario_; }

    double npv(const Polygon& road) const;

protected:
    Objectives evaluate(const Structure& s) const override;

private:
    RoadScenario scenario_;
};

struct WaveScenario {
    std::vector<Point> targets;
    // Direction the waves travel; blocking is counted along the opposite ray.
    Point wind_direction{0.0, -1.0};
    double base_height = 2.5;
    double protection = 0.69314718055994530942;  // ln 2
    // Upwind rays are cut off at this length (the allowed-area diagonal).
    double ray_length = 0.0;
};

// Number of breakwater segments crossed by the upwind ray from `target`.
std::size_t blocking_segments(Point target, const WaveScenario& sc, const Structure& breakwaters);

// Stand-in wave model: objective 0 = sum of h0 * exp(-gamma * n_block(t))
// over targets, objective 1 = total breakwater length.
class ShadowWaveEstimator : public Estimator {
public:
    explicit ShadowWaveEstimator(WaveScenario scenario);

    std::size_t objective_count() const override { return 2; }
    const WaveScenario& scenario() const { return scenario_; }

protected:
    Objectives evaluate(const Structure& s) const override;

private:
    WaveScenario scenario_;
};

// Threshold-gated pair: the cheap estimate stands unless its first objective
// is below `threshold`, in which case the accurate estimate replaces it.
class CompositeEstimator : public Estimator {
public:
    CompositeEstimator(EstimatorPtr cheap, EstimatorPtr accurate, double threshold);

    std::size_t objective_count() const override { return cheap_->objective_count(); }
    bool concurrent_safe() const override { return cheap_->concurrent_safe() && accurate_->concurrent_safe(); }
    std::vector<Objectives> estimate(std::span<const Structure> batch) override;
    std::size_t total_calls() const override { return cheap_->total_calls() + accurate_->total_calls(); }

    const Estimator& cheap() const { return *cheap_; }
    const Estimator& accurate() const { return *accurate_; }
    double threshold() const { return threshold_; }

protected:
    Objectives evaluate(const Structure& s) const override;

private:
    EstimatorPtr cheap_;
    EstimatorPtr accurate_;
    double threshold_;
};

// Wraps a plain function; used for instrumented and user-supplied objectives.
class FunctionEstimator : public Estimator {
public:
    using Fn = std::function<Objectives(const Structure&)>;
    FunctionEstimator(std::size_t objectives, Fn fn, bool concurrent_safe = true)
        : objectives_(objectives), fn_(std::move(fn)), concurrent_safe_(concurrent_safe) {}

    std::size_t objective_count() const override { return objectives_; }
    bool concurrent_safe() const override { return concurrent_safe_; }

protected:
    Objectives evaluate(const Structure& s) const override { return fn_(s); }

private:
    std::size_t objectives_;
    Fn fn_;
    bool concurrent_safe_;
};

}  // namespace polygen
