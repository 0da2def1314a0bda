#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "polygen/domain.hpp"
#include "polygen/estimators.hpp"
#include "polygen/optimizers.hpp"
#include "polygen/pareto.hpp"
#include "polygen/sampler.hpp"

namespace polygen {

enum class DesignMode { Traditional, ExtraSampling, RandomSearch };

std::string_view to_string(DesignMode mode);
std::optional<DesignMode> parse_design_mode(std::string_view name);

struct DesignConfig {
    DesignMode mode = DesignMode::Traditional;
    std::size_t population_size = 30;
    // 0 selects population_size / 2.
    std::size_t k_select = 0;
    std::size_t max_epochs = 10;
    std::optional<double> time_budget_s;
    std::optional<double> target_value;
    std::uint64_t seed = 0;

    std::size_t selected() const { return k_select ? k_select : population_size / 2; }
};

// Throws ConfigError naming the offending design.* field.
void check_design_config(const DesignConfig& cfg);

struct Toolkit {
    Sampler* sampler = nullptr;
    Estimator* estimator = nullptr;
    Optimizer* optimizer = nullptr;
};

struct EpochRecord {
    std::size_t epoch = 0;
    // Lowest value seen so far for one objective; the epoch's lowest-fitness
    // member otherwise.
    Objectives best_objectives;
    std::optional<double> hypervolume;
    std::size_t estimator_calls = 0;
    std::vector<Structure> population;
};

struct DesignResult {
    std::vector<Individual> designs;
    std::vector<EpochRecord> trace;
    std::optional<Objectives> reference_point;
};

using EpochSink = std::function<void(const EpochRecord&)>;

// Generative design loop. `sink` sees every record as soon as it is complete,
// so a failing run still leaves the finished epochs behind.
DesignResult run_design(const Toolkit& tk, const Domain& d, const DesignConfig& cfg, const EpochSink& sink = {});

}  // namespace polygen
