#include "polygen/optimizers.hpp"

#include <algorithm>
#include <stdexcept>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

bool better(const Individual& a, const Individual& b) {
    if (a.objectives.size() == 1 && b.objectives.size() == 1) return a.objectives[0] < b.objectives[0];
    return a.fitness < b.fitness;
}

}  // namespace

Variation::Variation(Domain domain, Sampler& sampler, VariationConfig cfg)
    : domain_(std::move(domain)), sampler_(&sampler), cfg_(cfg) {
    check_mutation_config(cfg_.mutation);
    if (cfg_.crossover_rate < 0 || cfg_.crossover_rate > 1) throw std::invalid_argument("variation: crossover_rate outside [0, 1]");
    if (cfg_.mutation_rate < 0 || cfg_.mutation_rate > 1) throw std::invalid_argument("variation: mutation_rate outside [0, 1]");
}

Structure Variation::offspring(const Structure& a, const Structure& b, RandomSource& rng) {
    Structure child = a;
    if (rng.bernoulli(cfg_.crossover_rate)) {
        try {
            child = crossover(a, b, domain_, *sampler_, rng);
        } catch (const CrossoverFailed&) {
            ++crossover_failures_;
            child = a;
        }
    }
    if (rng.bernoulli(cfg_.mutation_rate)) {
        try {
            child = mutate(child, domain_, cfg_.mutation, *sampler_, rng);
        } catch (const MutationFailed&) {
            ++mutation_failures_;
            child = sampler_->sample_structure(rng);
        }
    }
    return child;
}

std::size_t tournament(const std::vector<Individual>& pool, std::size_t size, RandomSource& rng) {
    if (pool.empty()) throw std::invalid_argument("tournament: empty pool");
    std::size_t winner = rng.index(pool.size());
    for (std::size_t i = 1; i < size; ++i) {
        const std::size_t challenger = rng.index(pool.size());
        if (better(pool[challenger], pool[winner])) winner = challenger;
    }
    return winner;
}

GeneticOptimizer::GeneticOptimizer(Variation& variation, GaConfig cfg) : variation_(&variation), cfg_(cfg) {
    if (cfg_.tournament_size < 1) throw std::invalid_argument("ga: tournament_size must be >= 1");
}

std::vector<Structure> GeneticOptimizer::propose(const std::vector<Individual>& selected, std::size_t count,
                                                 RandomSource& rng) {
    std::vector<Structure> next;
    next.reserve(count);
    if (selected.empty()) return variation_->sampler().sample_batch(count, rng);
    std::vector<std::size_t> order(selected.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return better(selected[l], selected[r]); });
    const std::size_t elites = std::min({cfg_.elite, count, selected.size()});
    for (std::size_t i = 0; i < elites; ++i) next.push_back(selected[order[i]].structure);
    while (next.size() < count) {
        const auto& a = selected[tournament(selected, cfg_.tournament_size, rng)];
        const auto& b = selected[tournament(selected, cfg_.tournament_size, rng)];
        next.push_back(variation_->offspring(a.structure, b.structure, rng));
    }
    return next;
}

void check_spea2_config(const Spea2Config& cfg) {
    if (cfg.population_size < 2) throw std::invalid_argument("spea2: population_size must be >= 2");
    if (cfg.archive_size < 1) throw std::invalid_argument("spea2: archive_size must be >= 1");
    if (cfg.max_steps < 1) throw std::invalid_argument("spea2: max_steps must be >= 1");
}

Spea2Optimizer::Spea2Optimizer(Variation& variation, Spea2Config cfg) : variation_(&variation), cfg_(cfg) {
    check_spea2_config(cfg_);
}

void Spea2Optimizer::observe(std::span<const Individual> population) {
    std::vector<Individual> pop(population.begin(), population.end());
    spea2_assign_fitness(pop, archive_, cfg_.neighbours());
    archive_ = environmental_selection(pop, archive_, cfg_.archive_size);
}

std::vector<Structure> Spea2Optimizer::propose(const std::vector<Individual>& selected, std::size_t count,
                                               RandomSource& rng) {
    std::vector<Individual> pool = selected;
    std::vector<Individual> arch = archive_;
    spea2_assign_fitness(pool, arch, cfg_.neighbours());
    pool.insert(pool.end(), arch.begin(), arch.end());
    std::vector<Structure> next;
    next.reserve(count);
    if (pool.empty()) return variation_->sampler().sample_batch(count, rng);
    while (next.size() < count) {
        const auto& a = pool[tournament(pool, 2, rng)];
        const auto& b = pool[tournament(pool, 2, rng)];
        next.push_back(variation_->offspring(a.structure, b.structure, rng));
    }
    return next;
}

std::optional<std::vector<Objectives>> Spea2Optimizer::archive_objectives() const {
    std::vector<Objectives> out;
    out.reserve(archive_.size());
    for (const auto& ind : archive_) out.push_back(ind.objectives);
    return out;
}

std::vector<Individual> make_individuals(std::vector<Structure> structures, std::vector<Objectives> objectives) {
    if (structures.size() != objectives.size()) throw std::invalid_argument("make_individuals: size mismatch");
    std::vector<Individual> out(structures.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].structure = std::move(structures[i]);
        out[i].objectives = std::move(objectives[i]);
    }
    return out;
}

GaResult ga_run(Sampler& sampler, Estimator& estimator, Variation& variation, const GaConfig& cfg, RandomSource& rng) {
    if (estimator.objective_count() != 1) throw std::invalid_argument("ga_run: single-objective estimator required");
    if (cfg.population_size < 2) throw std::invalid_argument("ga_run: population_size must be >= 2");
    if (cfg.generations < 1) throw std::invalid_argument("ga_run: generations must be >= 1");
    GeneticOptimizer ga(variation, cfg);
    GaResult result;
    std::vector<Structure> designs = sampler.sample_batch(cfg.population_size, rng);
    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        auto objectives = estimator.estimate(designs);
        auto population = make_individuals(std::move(designs), std::move(objectives));
        auto ranked = select_k_best(population, population.size());
        if (gen == 0 || ranked.front().objectives[0] < result.best.objectives[0]) result.best = ranked.front();
        result.best_trace.push_back(ranked.front().objectives[0]);
        result.generations_run = gen + 1;
        if (cfg.target_value && result.best.objectives[0] <= *cfg.target_value) break;
        if (gen + 1 == cfg.generations) break;
        RandomSource step = rng.split();
        designs = ga.propose(ranked, cfg.population_size, step);
    }
    return result;
}

Spea2Result spea2_run(Sampler& sampler, Estimator& estimator, Variation& variation, const Spea2Config& cfg,
                      RandomSource& rng, std::optional<Objectives> reference) {
    check_spea2_config(cfg);
    Spea2Optimizer spea2(variation, cfg);
    Spea2Result result;
    std::vector<Structure> designs = sampler.sample_batch(cfg.population_size, rng);
    for (std::size_t step = 0; step < cfg.max_steps; ++step) {
        auto objectives = estimator.estimate(designs);
        if (step == 0) result.reference_point = reference ? *reference : default_reference_point(objectives);
        auto population = make_individuals(std::move(designs), std::move(objectives));
        spea2.observe(population);
        const auto archive = *spea2.archive_objectives();
        result.hypervolume_trace.push_back(
            result.reference_point.size() == 2 ? hypervolume_2d(archive, result.reference_point) : 0.0);
        if (step + 1 == cfg.max_steps) break;
        RandomSource stream = rng.split();
        designs = spea2.propose(population, cfg.population_size, stream);
    }
    result.archive = spea2.archive();
    return result;
}

}  // namespace polygen
