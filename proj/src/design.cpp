#include "polygen/design.hpp"

#include <chrono>

#include "polygen/errors.hpp"

namespace polygen {

std::string_view to_string(DesignMode mode) {
    switch (mode) {
        case DesignMode::Traditional: return "traditional";
        case DesignMode::ExtraSampling: return "extra_sampling";
        case DesignMode::RandomSearch: return "random_search";
    }
    return "unknown";
}

std::optional<DesignMode> parse_design_mode(std::string_view name) {
    for (DesignMode m : {DesignMode::Traditional, DesignMode::ExtraSampling, DesignMode::RandomSearch}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

void check_design_config(const DesignConfig& cfg) {
    if (cfg.population_size < 2) throw ConfigError("design.population_size", "must be at least 2");
    if (cfg.k_select > cfg.population_size) throw ConfigError("design.k_select", "must not exceed population_size");
    if (cfg.selected() < 1) throw ConfigError("design.k_select", "must select at least one design");
    if (cfg.max_epochs < 1) throw ConfigError("design.max_epochs", "must be at least 1");
    if (cfg.time_budget_s && !(*cfg.time_budget_s > 0)) throw ConfigError("design.time_budget_s", "must be positive");
}

namespace {

void append(std::vector<Structure>& into, std::vector<Structure> more) {
    into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<Structure> structures_of(const std::vector<Individual>& inds) {
    std::vector<Structure> out;
    out.reserve(inds.size());
    for (const auto& ind : inds) out.push_back(ind.structure);
    return out;
}

}  // namespace

DesignResult run_design(const Toolkit& tk, const Domain& d, const DesignConfig& cfg, const EpochSink& sink) {
    check_design_config(cfg);
    check_domain(d);
    if (!tk.sampler || !tk.estimator) throw std::invalid_argument("run_design: toolkit needs a sampler and an estimator");
    if (cfg.mode == DesignMode::Traditional && !tk.optimizer) {
        throw std::invalid_argument("run_design: traditional mode requires an optimizer");
    }
    Optimizer* optimizer = cfg.mode == DesignMode::RandomSearch ? nullptr : tk.optimizer;

    const auto started = std::chrono::steady_clock::now();
    const std::size_t pop_size = cfg.population_size;
    const std::size_t k = cfg.selected();
    const std::size_t m = tk.estimator->objective_count();

    RandomSource rng(cfg.seed);
    DesignResult result;
    std::optional<Objectives> best_single;

    std::vector<Structure> designs = tk.sampler->sample_batch(pop_size, rng);
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        auto objectives = tk.estimator->estimate(designs);
        if (m == 2 && !result.reference_point) result.reference_point = default_reference_point(objectives);
        auto population = make_individuals(designs, std::move(objectives));
        if (m > 1) {
            std::vector<Individual> no_archive;
            spea2_assign_fitness(population, no_archive, default_k_neighbors(population.size(), 0));
        }
        if (optimizer) optimizer->observe(population);
        auto selected = select_k_best(population, k);

        EpochRecord rec;
        rec.epoch = epoch;
        if (m == 1) {
            const Objectives& cur = selected.front().objectives;
            if (!best_single || cur[0] < (*best_single)[0]) best_single = cur;
            rec.best_objectives = *best_single;
        } else {
            rec.best_objectives = selected.front().objectives;
        }
        if (result.reference_point) {
            std::vector<Objectives> front;
            if (auto archived = optimizer ? optimizer->archive_objectives() : std::nullopt) {
                front = std::move(*archived);
            } else {
                for (const auto& ind : population) front.push_back(ind.objectives);
            }
            rec.hypervolume = hypervolume_2d(front, *result.reference_point);
        }
        rec.estimator_calls = tk.estimator->total_calls();
        rec.population = std::move(designs);
        if (sink) sink(rec);
        result.trace.push_back(std::move(rec));
        result.designs = selected;

        if (epoch == cfg.max_epochs) break;
        if (cfg.target_value && result.trace.back().best_objectives[0] <= *cfg.target_value) break;
        if (cfg.time_budget_s) {
            const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
            if (spent.count() >= *cfg.time_budget_s) break;
        }

        RandomSource step = rng.split();
        switch (cfg.mode) {
            case DesignMode::Traditional:
                designs = optimizer->propose(selected, pop_size, step);
                break;
            case DesignMode::ExtraSampling:
                designs = optimizer ? optimizer->propose(selected, k, step) : structures_of(selected);
                append(designs, tk.sampler->sample_batch(pop_size - designs.size(), step));
                break;
            case DesignMode::RandomSearch:
                designs = structures_of(selected);
                append(designs, tk.sampler->sample_batch(pop_size - k, step));
                break;
        }
    }
    return result;
}

}  // namespace polygen
