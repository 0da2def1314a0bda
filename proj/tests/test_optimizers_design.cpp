#include <doctest.h>

#include <cmath>

#include "polygen/design.hpp"
#include "polygen/errors.hpp"
#include "polygen/optimizers.hpp"
#include "polygen/suites.hpp"

using namespace polygen;

namespace {

struct Synthetic {
    Domain domain = synthetic_domain(100.0, 1);
    StandardSampler sampler{domain, default_sampler_config(domain)};
    Structure reference;
    std::unique_ptr<ReferenceDistanceEstimator> estimator;
    Variation variation{domain, sampler, VariationConfig{}};

    explicit Synthetic(std::uint64_t seed) {
        RandomSource rng(seed);
        reference = synthetic_reference(domain, rng);
        estimator = std::make_unique<ReferenceDistanceEstimator>(reference, domain.diagonal());
    }
};

}  // namespace

TEST_CASE("tournament picks the better of its draws") {
    std::vector<Individual> pool(4);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i].objectives = {static_cast<double>(4 - i)};
    RandomSource rng(1);
    for (int t = 0; t < 50; ++t) CHECK(tournament(pool, 8, rng) < pool.size());
    std::size_t wins = 0;
    for (int t = 0; t < 400; ++t) wins += tournament(pool, 2, rng) == 3;
    CHECK(wins > 100);
}

TEST_CASE("ga best trace is non-increasing and runs are reproducible") {
    Synthetic s(3);
    GaConfig cfg;
    cfg.generations = 15;
    RandomSource a(9);
    const auto first = ga_run(s.sampler, *s.estimator, s.variation, cfg, a);
    CHECK(first.best_trace.size() == 15);
    for (std::size_t i = 1; i < first.best_trace.size(); ++i) CHECK(first.best_trace[i] <= first.best_trace[i - 1]);
    CHECK(first.best.objectives[0] == first.best_trace.back());

    Synthetic again(3);
    RandomSource b(9);
    const auto second = ga_run(again.sampler, *again.estimator, again.variation, cfg, b);
    CHECK(second.best_trace == first.best_trace);
}

TEST_CASE("ga stops at the target value") {
    Synthetic s(4);
    GaConfig cfg;
    cfg.generations = 50;
    cfg.target_value = 1.0;
    RandomSource rng(1);
    const auto result = ga_run(s.sampler, *s.estimator, s.variation, cfg, rng);
    CHECK(result.generations_run == 1);
}

TEST_CASE("spea2 run is deterministic and archive bounded") {
    const WaveCase wc = breakwater_case();
    auto run = [&] {
        StandardSampler sampler(wc.domain, default_sampler_config(wc.domain));
        ShadowWaveEstimator est(wc.scenario);
        Variation var(wc.domain, sampler, VariationConfig{});
        Spea2Config cfg;
        cfg.max_steps = 5;
        RandomSource rng(5);
        return spea2_run(sampler, est, var, cfg, rng);
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.hypervolume_trace == b.hypervolume_trace);
    CHECK(a.archive.size() <= 15);
    CHECK(a.hypervolume_trace.size() == 5);
    CHECK_THROWS_AS(check_spea2_config(Spea2Config{1, 15, 5, 0}), std::invalid_argument);
}

TEST_CASE("design loop modes") {
    Synthetic s(6);
    GeneticOptimizer ga(s.variation, GaConfig{});
    DesignConfig cfg;
    cfg.population_size = 12;
    cfg.max_epochs = 4;
    cfg.seed = 2;

    SUBCASE("traditional samples once and counts calls") {
        std::size_t seen = 0;
        const std::size_t before = s.sampler.batch_calls();
        const auto r = run_design({&s.sampler, s.estimator.get(), &ga}, s.domain, cfg, [&](const EpochRecord& rec) {
            CHECK(rec.epoch == seen + 1);
            CHECK(rec.population.size() == 12);
            for (const auto& st : rec.population) CHECK(validate(st, s.domain).valid());
            ++seen;
        });
        CHECK(seen == 4);
        CHECK(s.sampler.batch_calls() - before == 1);
        CHECK(r.trace.back().estimator_calls == 48);
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            CHECK(r.trace[i].best_objectives[0] <= r.trace[i - 1].best_objectives[0]);
        }
    }

    SUBCASE("extra sampling without optimizer equals random search") {
        auto once = [&](DesignMode mode) {
            Synthetic fresh(6);
            DesignConfig c = cfg;
            c.mode = mode;
            return run_design({&fresh.sampler, fresh.estimator.get(), nullptr}, fresh.domain, c);
        };
        const auto extra = once(DesignMode::ExtraSampling);
        const auto random = once(DesignMode::RandomSearch);
        REQUIRE(extra.trace.size() == random.trace.size());
        for (std::size_t i = 0; i < extra.trace.size(); ++i) {
            CHECK(extra.trace[i].best_objectives == random.trace[i].best_objectives);
        }
    }

    SUBCASE("traditional requires an optimizer") {
        CHECK_THROWS(run_design({&s.sampler, s.estimator.get(), nullptr}, s.domain, cfg));
    }

    SUBCASE("early stop on target") {
        cfg.target_value = 10.0;
        const auto r = run_design({&s.sampler, s.estimator.get(), &ga}, s.domain, cfg);
        CHECK(r.trace.size() == 1);
    }

    SUBCASE("config checks name the field") {
        DesignConfig bad = cfg;
        bad.k_select = 13;
        try {
            check_design_config(bad);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.field == "design.k_select");
        }
        bad = cfg;
        bad.max_epochs = 0;
        CHECK_THROWS_AS(check_design_config(bad), ConfigError);
    }
}

TEST_CASE("design loop reports hypervolume for two objectives") {
    const WaveCase wc = breakwater_case();
    StandardSampler sampler(wc.domain, default_sampler_config(wc.domain));
    ShadowWaveEstimator est(wc.scenario);
    Variation var(wc.domain, sampler, VariationConfig{});
    Spea2Config sp;
    sp.population_size = 10;
    sp.archive_size = 5;
    Spea2Optimizer opt(var, sp);
    DesignConfig cfg;
    cfg.population_size = 10;
    cfg.max_epochs = 3;
    const auto r = run_design({&sampler, &est, &opt}, wc.domain, cfg);
    REQUIRE(r.reference_point);
    for (const auto& rec : r.trace) {
        REQUIRE(rec.hypervolume);
        CHECK(*rec.hypervolume >= 0.0);
    }
    CHECK(opt.archive().size() <= 5);
}

TEST_CASE("composite estimator call counts in the design loop") {
    Synthetic s(8);
    auto cheap = std::make_shared<FunctionEstimator>(1, [&s](const Structure& st) {
        return Objectives{10.0 * chamfer_distance(st, s.reference, 50) / s.domain.diagonal()};
    });
    auto accurate = std::make_shared<FunctionEstimator>(1, [](const Structure& st) { return Objectives{structure_length(st)}; });
    CompositeEstimator comp(cheap, accurate, 6.0);
    DesignConfig cfg;
    cfg.mode = DesignMode::RandomSearch;
    cfg.population_size = 10;
    cfg.max_epochs = 3;
    const auto r = run_design({&s.sampler, &comp, nullptr}, s.domain, cfg);
    CHECK(cheap->calls() == 30);
    CHECK(r.trace.back().estimator_calls == 30 + accurate->calls());
}
