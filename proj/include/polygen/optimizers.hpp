#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polygen/domain.hpp"
#include "polygen/estimators.hpp"
#include "polygen/evolution.hpp"
#include "polygen/pareto.hpp"
#include "polygen/random.hpp"
#include "polygen/sampler.hpp"

namespace polygen {

struct VariationConfig {
    double crossover_rate = 0.7;
    double mutation_rate = 0.9;
    MutationConfig mutation;
};

// Crossover + mutation with the fallbacks the optimizers rely on: a failed
// crossover copies the first parent, a failed mutation is replaced by a fresh
// sample.
class Variation {
public:
    Variation(Domain domain, Sampler& sampler, VariationConfig cfg);

    Structure offspring(const Structure& a, const Structure& b, RandomSource& rng);

    const Domain& domain() const { return domain_; }
    Sampler& sampler() { return *sampler_; }
    std::size_t crossover_failures() const { return crossover_failures_; }
    std::size_t mutation_failures() const { return mutation_failures_; }

private:
    Domain domain_;
    Sampler* sampler_;
    VariationConfig cfg_;
    std::size_t crossover_failures_ = 0;
    std::size_t mutation_failures_ = 0;
};

// Optimizer step as used by the design loop: observe an estimated population,
// then propose the next designs from the selected ones.
class Optimizer {
public:
    virtual ~Optimizer() = default;
    virtual std::string name() const = 0;
    virtual void observe(std::span<const Individual> /*population*/) {}
    virtual std::vector<Structure> propose(const std::vector<Individual>& selected, std::size_t count,
                                           RandomSource& rng) = 0;
    // Objectives of the elitist archive, for optimizers that keep one.
    virtual std::optional<std::vector<Objectives>> archive_objectives() const { return std::nullopt; }
};

struct GaConfig {
    std::size_t population_size = 30;
    std::size_t generations = 100;
    std::size_t elite = 2;
    std::size_t tournament_size = 2;
    std::optional<double> target_value;
};

// Elitist generational GA step: the `elite` best selected designs carry over
// unchanged, the rest are bred by tournament selection and variation.
class GeneticOptimizer : public Optimizer {
public:
    GeneticOptimizer(Variation& variation, GaConfig cfg);

    std::string name() const override { return "ga"; }
    std::vector<Structure> propose(const std::vector<Individual>& selected, std::size_t count,
                                   RandomSource& rng) override;

private:
    Variation* variation_;
    GaConfig cfg_;
};

struct Spea2Config {
    std::size_t population_size = 30;
    std::size_t archive_size = 15;
    std::size_t max_steps = 50;
    // 0 selects round(sqrt(M + N)).
    std::size_t k_neighbors = 0;

    std::size_t neighbours() const {
        return k_neighbors ? k_neighbors : default_k_neighbors(population_size, archive_size);
    }
};

void check_spea2_config(const Spea2Config& cfg);

class Spea2Optimizer : public Optimizer {
public:
    Spea2Optimizer(Variation& variation, Spea2Config cfg);

    std::string name() const override { return "spea2"; }
    // Fitness over population ∪ archive, then environmental selection.
    void observe(std::span<const Individual> population) override;
    // Binary tournaments on F over selected ∪ archive, then variation.
    std::vector<Structure> propose(const std::vector<Individual>& selected, std::size_t count,
                                   RandomSource& rng) override;
    std::optional<std::vector<Objectives>> archive_objectives() const override;

    const std::vector<Individual>& archive() const { return archive_; }

private:
    Variation* variation_;
    Spea2Config cfg_;
    std::vector<Individual> archive_;
};

// Index of the winner of a tournament of `size` uniform draws (lower
// objective for m = 1, lower fitness otherwise).
std::size_t tournament(const std::vector<Individual>& pool, std::size_t size, RandomSource& rng);

struct GaResult {
    Individual best;
    // Best objective of each generation's population.
    std::vector<double> best_trace;
    std::size_t generations_run = 0;
};

GaResult ga_run(Sampler& sampler, Estimator& estimator, Variation& variation, const GaConfig& cfg,
                RandomSource& rng);

struct Spea2Result {
    std::vector<Individual> archive;
    std::vector<double> hypervolume_trace;
    Objectives reference_point;
};

// Full SPEA2 loop. When `reference` is empty the hypervolume reference point
// is derived from the initial estimated population and then held fixed.
Spea2Result spea2_run(Sampler& sampler, Estimator& estimator, Variation& variation, const Spea2Config& cfg,
                      RandomSource& rng, std::optional<Objectives> reference = std::nullopt);

std::vector<Individual> make_individuals(std::vector<Structure> structures, std::vector<Objectives> objectives);

}  // namespace polygen
