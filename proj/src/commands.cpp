#include "polygen/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "polygen/config.hpp"
#include "polygen/design.hpp"
#include "polygen/errors.hpp"
#include "polygen/serialization.hpp"
#include "polygen/stats.hpp"
#include "polygen/suites.hpp"

namespace polygen {

namespace {

constexpr std::uint64_t kReferenceStream = 0x9e3779b97f4a7c15ULL;

struct Loaded {
    std::string bytes;
    ExperimentConfig cfg;
};

Loaded load(const std::string& path, const Overrides& ov) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("<document>", "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Loaded l{buf.str(), {}};
    l.cfg = parse_config(l.bytes);
    if (ov.seed) l.cfg.design.seed = *ov.seed;
    if (ov.epochs) l.cfg.design.max_epochs = *ov.epochs;
    if (ov.out) l.cfg.output = *ov.out;
    check_design_config(l.cfg.design);
    return l;
}

// JSON-lines sink over a file or stdout, flushed after every record.
class RecordWriter {
public:
    explicit RecordWriter(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw std::runtime_error("cannot open output " + path);
        }
    }
    void write(const json& record) {
        std::ostream& os = file_ ? *file_ : std::cout;
        os << record.dump() << '\n';
        os.flush();
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

struct Toolchain {
    std::unique_ptr<StandardSampler> sampler;
    EstimatorPtr estimator;
    std::unique_ptr<Variation> variation;
    std::unique_ptr<Optimizer> optimizer;
};

Toolchain build_toolchain(const ExperimentConfig& cfg) {
    Toolchain t;
    t.sampler = std::make_unique<StandardSampler>(cfg.domain, cfg.sampler);
    RandomSource ref_rng(cfg.design.seed ^ kReferenceStream);
    t.estimator = build_estimator(cfg.estimator, cfg, ref_rng);
    t.variation = std::make_unique<Variation>(cfg.domain, *t.sampler, cfg.variation);
    if (cfg.optimizer.name == "ga") {
        GaConfig ga;
        ga.population_size = cfg.design.population_size;
        ga.generations = cfg.design.max_epochs;
        ga.elite = cfg.optimizer.elite;
        ga.tournament_size = cfg.optimizer.tournament_size;
        t.optimizer = std::make_unique<GeneticOptimizer>(*t.variation, ga);
    } else if (cfg.optimizer.name == "spea2") {
        Spea2Config sp;
        sp.population_size = cfg.design.population_size;
        sp.archive_size = cfg.optimizer.archive_size;
        sp.max_steps = cfg.design.max_epochs;
        sp.k_neighbors = cfg.optimizer.k_neighbors;
        t.optimizer = std::make_unique<Spea2Optimizer>(*t.variation, sp);
    }
    return t;
}

json call_counts(const Estimator& e) {
    json out{{"total", e.total_calls()}};
    if (const auto* composite = dynamic_cast<const CompositeEstimator*>(&e)) {
        out["cheap"] = composite->cheap().total_calls();
        out["accurate"] = composite->accurate().total_calls();
    }
    return out;
}

Domain sweep_domain(const Domain& base, SweepAxis axis, double value) {
    Domain d = base;
    switch (axis) {
        case SweepAxis::Polygons:
            d.min_polygons = d.max_polygons = static_cast<int>(value);
            break;
        case SweepAxis::Vertices:
            d.max_points = static_cast<int>(value);
            break;
        case SweepAxis::DomainScale: {
            auto scale = [value](Polygon p) {
                for (Point& v : p.vertices) v = v * value;
                return p;
            };
            d.allowed_area = scale(d.allowed_area);
            for (Polygon& p : d.prohibited) p = scale(p);
            for (Point& t : d.targets) t = t * value;
            if (d.fixed_endpoints) d.fixed_endpoints = std::make_pair(d.fixed_endpoints->first * value, d.fixed_endpoints->second * value);
            break;
        }
    }
    check_domain(d);
    return d;
}

}  // namespace

int cmd_run(const std::string& config_path, const Overrides& ov, std::ostream& err) {
    return guarded(err, [&] {
        const auto started = std::chrono::steady_clock::now();
        const Loaded l = load(config_path, ov);
        const ExperimentConfig& cfg = l.cfg;
        Toolchain t = build_toolchain(cfg);
        RecordWriter writer(cfg.output);
        const Toolkit tk{t.sampler.get(), t.estimator.get(), t.optimizer.get()};

        DesignResult result;
        try {
            result = run_design(tk, cfg.domain, cfg.design,
                                [&](const EpochRecord& rec) { writer.write(epoch_record_to_json(rec)); });
        } catch (const std::exception& e) {
            writer.write(json{{"type", "error"}, {"message", e.what()}});
            throw;
        }

        const EpochRecord& last = result.trace.back();
        json summary{{"type", "summary"},
                     {"epochs", result.trace.size()},
                     {"mode", to_string(cfg.design.mode)},
                     {"optimizer", cfg.optimizer.name},
                     {"best_objectives", objectives_to_json(last.best_objectives)},
                     {"hypervolume", nullptr},
                     {"estimator_calls", call_counts(*t.estimator)},
                     {"seed", cfg.design.seed},
                     {"config_digest", sha256_hex(l.bytes)}};
        if (last.hypervolume) summary["hypervolume"] = *last.hypervolume;
        const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started;
        if (ov.record_wall_time) summary["wall_time_s"] = wall.count();
        writer.write(summary);
        err << "run finished: " << result.trace.size() << " epochs in " << wall.count() << " s\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_sample(const std::string& config_path, std::size_t count, const Overrides& ov, std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = load(config_path, ov);
        StandardSampler sampler(l.cfg.domain, l.cfg.sampler);
        RecordWriter writer(ov.out.value_or(""));
        RandomSource rng(l.cfg.design.seed);
        for (std::size_t i = 0; i < count; ++i) {
            const Structure s = sampler.sample_structure(rng);
            writer.write(json{{"type", "sample"}, {"index", i}, {"structure", structure_to_json(s)}});
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_scaling_study(const std::string& config_path, const Overrides& ov, std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = load(config_path, ov);
        const ExperimentConfig& cfg = l.cfg;
        if (!cfg.scaling_study) throw ConfigError("scaling_study", "required by scaling-study");
        const ScalingStudyConfig& study = *cfg.scaling_study;
        RecordWriter writer(cfg.output);

        ReconstructionSettings settings;
        settings.population_size = cfg.design.population_size;
        settings.generations = cfg.design.max_epochs;
        settings.elite = cfg.optimizer.elite;
        settings.target_value = cfg.design.target_value;
        settings.variation = cfg.variation;
        if (cfg.estimator.name == "reference_distance") settings.samples = cfg.estimator.samples;

        const char* axis_name = study.axis == SweepAxis::Polygons   ? "polygons"
                                : study.axis == SweepAxis::Vertices ? "vertices"
                                                                    : "domain_scale";
        RandomSource rng(cfg.design.seed);
        std::vector<double> medians;
        for (double value : study.values) {
            Domain d;
            SamplerConfig sc;
            try {
                d = sweep_domain(cfg.domain, study.axis, value);
                sc = default_sampler_config(d);
                sc.attempt_cap = cfg.sampler.attempt_cap;
                sc.n_polygons = d.min_polygons;
                check_sampler_config(sc, d);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("scaling_study.values", e.what());
            }
            std::vector<double> errors;
            for (std::size_t rep = 0; rep < study.repetitions; ++rep) {
                RandomSource run_rng = rng.split();
                const auto outcome = reconstruct_reference(d, sc, settings, run_rng);
                errors.push_back(outcome.error);
                writer.write(json{{"type", "scaling_row"},
                                  {"axis", axis_name},
                                  {"value", value},
                                  {"repetition", rep},
                                  {"error", outcome.error},
                                  {"generations", outcome.generations},
                                  {"estimator_calls", outcome.estimator_calls}});
            }
            medians.push_back(median(errors));
            writer.write(json{{"type", "scaling_group"}, {"axis", axis_name}, {"value", value}, {"median_error", medians.back()}});
        }
        json summary{{"type", "scaling_summary"},
                     {"axis", axis_name},
                     {"spearman", nullptr},
                     {"seed", cfg.design.seed},
                     {"config_digest", sha256_hex(l.bytes)}};
        if (medians.size() >= 2) summary["spearman"] = spearman(study.values, medians);
        writer.write(summary);
        return static_cast<int>(kExitOk);
    });
}

int cmd_validate(const std::string& config_path, const std::string& input_path, const Overrides& ov,
                 std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = load(config_path, ov);
        std::ifstream in(input_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + input_path);
        RecordWriter writer(ov.out.value_or(""));
        std::size_t total = 0;
        std::size_t valid = 0;
        auto check = [&](const Structure& s, std::size_t line, std::optional<std::size_t> member) {
            const ValidationReport report = validate(s, l.cfg.domain);
            json violations = json::array();
            for (const auto& v : report.violations) {
                violations.push_back(json{{"kind", to_string(v.kind)}, {"polygon", v.polygon}, {"other", v.other}});
            }
            json rec{{"type", "validation"}, {"line", line}, {"valid", report.valid()}, {"violations", violations}};
            if (member) rec["member"] = *member;
            writer.write(rec);
            ++total;
            if (report.valid()) ++valid;
        };
        std::string text;
        std::size_t line = 0;
        while (std::getline(in, text)) {
            ++line;
            if (text.empty()) continue;
            json record;
            try {
                record = json::parse(text);
            } catch (const json::parse_error& e) {
                throw std::runtime_error("line " + std::to_string(line) + ": " + e.what());
            }
            const std::string where = "line " + std::to_string(line);
            try {
                if (record.contains("structure")) {
                    check(structure_from_json(record["structure"], where + ".structure"), line, std::nullopt);
                }
                if (record.contains("population")) {
                    const json& pop = record["population"];
                    for (std::size_t i = 0; i < pop.size(); ++i) {
                        check(structure_from_json(pop[i], where + ".population"), line, i);
                    }
                }
            } catch (const ConfigError& e) {
                throw std::runtime_error(std::string("malformed record: ") + e.what());
            }
        }
        writer.write(json{{"type", "validation_summary"}, {"total", total}, {"valid", valid}});
        return static_cast<int>(valid == total ? kExitOk : kExitInvalid);
    });
}

}  // namespace polygen
