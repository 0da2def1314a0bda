#include "polygen/config.hpp"

#include <initializer_list>
#include <stdexcept>

#include "polygen/errors.hpp"
#include "polygen/serialization.hpp"

namespace polygen {

namespace {

// Thin accessor over one JSON object that tracks its dotted path.
class Block {
public:
    Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [key, _] : j_.items()) {
            bool known = false;
            for (const char* k : keys) known = known || key == k;
            if (!known) throw ConfigError(field(key), "unknown key");
        }
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    const json& at(const char* key) const { return j_.at(key); }
    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& require(const char* key) const {
        if (!has(key)) throw ConfigError(field(key), "required");
        return j_.at(key);
    }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_number()) throw ConfigError(field(key), "expected a number");
        return at(key).get<double>();
    }

    std::optional<double> optional_number(const char* key) const {
        if (!has(key)) return std::nullopt;
        return number(key, 0.0);
    }

    std::uint64_t unsigned_int(const char* key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) throw ConfigError(field(key), "must be non-negative");
        throw ConfigError(field(key), "expected an integer");
    }

    int small_int(const char* key, int fallback) const {
        const auto v = unsigned_int(key, static_cast<std::uint64_t>(fallback < 0 ? 0 : fallback));
        if (v > 1'000'000) throw ConfigError(field(key), "too large");
        return static_cast<int>(v);
    }

    std::string text(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_string()) throw ConfigError(field(key), "expected a string");
        return at(key).get<std::string>();
    }

    Block child(const char* key) const { return Block(j_.at(key), field(key)); }
    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
};

template <class Fn>
void rethrow_as_config(const std::string& field, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

Domain parse_domain(const Block& b) {
    b.allow({"allowed_area", "prohibited", "targets", "min_points", "max_points", "min_polygons", "max_polygons",
             "polygon_kind", "fixed_endpoints", "max_repair_rounds"});
    Domain d;
    d.polygon_kind = b.has("polygon_kind") ? parse_polygon_kind(b.at("polygon_kind"), b.field("polygon_kind"))
                                           : PolygonKind::Closed;
    d.allowed_area = polygon_from_json(b.require("allowed_area"), PolygonKind::Closed, b.field("allowed_area"));
    if (b.has("prohibited")) {
        const json& list = b.at("prohibited");
        if (!list.is_array()) throw ConfigError(b.field("prohibited"), "expected an array of polygons");
        for (std::size_t i = 0; i < list.size(); ++i) {
            d.prohibited.push_back(polygon_from_json(list[i], PolygonKind::Closed,
                                                     b.field("prohibited") + "[" + std::to_string(i) + "]"));
        }
    }
    if (b.has("targets")) d.targets = points_from_json(b.at("targets"), b.field("targets"));
    d.min_points = b.small_int("min_points", d.polygon_kind == PolygonKind::Open ? 2 : 3);
    d.max_points = b.small_int("max_points", d.max_points);
    d.min_polygons = b.small_int("min_polygons", d.min_polygons);
    d.max_polygons = b.small_int("max_polygons", d.max_polygons);
    d.max_repair_rounds = b.small_int("max_repair_rounds", d.max_repair_rounds);
    if (b.has("fixed_endpoints")) {
        const auto ends = points_from_json(b.at("fixed_endpoints"), b.field("fixed_endpoints"));
        if (ends.size() != 2) throw ConfigError(b.field("fixed_endpoints"), "expected exactly two points");
        d.fixed_endpoints = std::make_pair(ends[0], ends[1]);
    }
    rethrow_as_config(b.path(), [&] { check_domain(d); });
    return d;
}

SamplerConfig parse_sampler(const Block& b, const Domain& d) {
    b.allow({"max_points", "n_polygons", "attempt_cap", "max_radius"});
    SamplerConfig s = default_sampler_config(d);
    s.max_points = b.small_int("max_points", s.max_points);
    s.n_polygons = b.small_int("n_polygons", s.n_polygons);
    s.attempt_cap = b.small_int("attempt_cap", s.attempt_cap);
    s.max_radius = b.number("max_radius", s.max_radius);
    rethrow_as_config("sampler", [&] { check_sampler_config(s, d); });
    return s;
}

EstimatorSpec parse_estimator(const Block& b) {
    EstimatorSpec e;
    e.name = b.text("name", "");
    if (e.name == "reference_distance") {
        b.allow({"name", "reference", "samples"});
        if (b.has("reference")) e.reference = structure_from_json(b.at("reference"), b.field("reference"));
        e.samples = b.unsigned_int("samples", e.samples);
        if (e.samples < 16) throw ConfigError(b.field("samples"), "must be at least 16");
    } else if (e.name == "road_npv") {
        b.allow({"name", "wells", "r_road"});
        e.wells = points_from_json(b.require("wells"), b.field("wells"));
        e.r_road = b.number("r_road", e.r_road);
        if (!(e.r_road > 0)) throw ConfigError(b.field("r_road"), "must be positive");
    } else if (e.name == "shadow_waves") {
        b.allow({"name", "wind_direction", "base_height", "protection", "ray_length"});
        if (b.has("wind_direction")) e.wind_direction = point_from_json(b.at("wind_direction"), b.field("wind_direction"));
        if (!(norm(e.wind_direction) > 0)) throw ConfigError(b.field("wind_direction"), "must be non-zero");
        e.base_height = b.number("base_height", e.base_height);
        e.protection = b.number("protection", e.protection);
        if (!(e.protection >= 0)) throw ConfigError(b.field("protection"), "must be non-negative");
        e.ray_length = b.number("ray_length", e.ray_length);
    } else if (e.name == "composite") {
        b.allow({"name", "cheap", "accurate", "threshold"});
        b.require("cheap");
        b.require("accurate");
        e.cheap = std::make_shared<EstimatorSpec>(parse_estimator(b.child("cheap")));
        e.accurate = std::make_shared<EstimatorSpec>(parse_estimator(b.child("accurate")));
        e.threshold = b.number("threshold", e.threshold);
    } else {
        throw ConfigError(b.field("name"), "expected reference_distance, road_npv, shadow_waves or composite");
    }
    return e;
}

OptimizerSpec parse_optimizer(const Block& b) {
    OptimizerSpec o;
    o.name = b.text("name", o.name);
    if (o.name == "ga") {
        b.allow({"name", "elite", "tournament_size"});
        o.elite = b.unsigned_int("elite", o.elite);
        o.tournament_size = b.unsigned_int("tournament_size", o.tournament_size);
        if (o.tournament_size < 1) throw ConfigError(b.field("tournament_size"), "must be at least 1");
    } else if (o.name == "spea2") {
        b.allow({"name", "archive_size", "k_neighbors"});
        o.archive_size = b.unsigned_int("archive_size", o.archive_size);
        o.k_neighbors = b.unsigned_int("k_neighbors", o.k_neighbors);
        if (o.archive_size < 1) throw ConfigError(b.field("archive_size"), "must be at least 1");
    } else if (o.name == "none") {
        b.allow({"name"});
    } else {
        throw ConfigError(b.field("name"), "expected ga, spea2 or none");
    }
    return o;
}

VariationConfig parse_variation(const Block& b) {
    b.allow({"crossover_rate", "mutation_rate", "max_rotation_deg", "displacement_fraction", "operator_weights"});
    VariationConfig v;
    v.crossover_rate = b.number("crossover_rate", v.crossover_rate);
    v.mutation_rate = b.number("mutation_rate", v.mutation_rate);
    if (v.crossover_rate < 0 || v.crossover_rate > 1) throw ConfigError(b.field("crossover_rate"), "must lie in [0, 1]");
    if (v.mutation_rate < 0 || v.mutation_rate > 1) throw ConfigError(b.field("mutation_rate"), "must lie in [0, 1]");
    v.mutation.max_rotation_deg = b.number("max_rotation_deg", v.mutation.max_rotation_deg);
    v.mutation.displacement_fraction = b.number("displacement_fraction", v.mutation.displacement_fraction);
    if (b.has("operator_weights")) {
        const Block w = b.child("operator_weights");
        for (const auto& [key, value] : b.at("operator_weights").items()) {
            bool known = false;
            for (std::size_t i = 0; i < kMutationOpCount; ++i) {
                if (to_string(static_cast<MutationOp>(i)) == key) {
                    if (!value.is_number()) throw ConfigError(w.field(key), "expected a number");
                    v.mutation.operator_weights[i] = value.get<double>();
                    known = true;
                }
            }
            if (!known) throw ConfigError(w.field(key), "unknown mutation operator");
        }
    }
    rethrow_as_config(b.path(), [&] { check_mutation_config(v.mutation); });
    return v;
}

DesignConfig parse_design(const Block& b) {
    b.allow({"population_size", "k_select", "max_epochs", "seed", "time_budget_s", "target_value"});
    DesignConfig c;
    c.population_size = b.unsigned_int("population_size", c.population_size);
    c.k_select = b.unsigned_int("k_select", c.k_select);
    c.max_epochs = b.unsigned_int("max_epochs", c.max_epochs);
    c.seed = b.unsigned_int("seed", c.seed);
    c.time_budget_s = b.optional_number("time_budget_s");
    c.target_value = b.optional_number("target_value");
    return c;
}

ScalingStudyConfig parse_scaling(const Block& b) {
    b.allow({"axis", "values", "repetitions"});
    ScalingStudyConfig s;
    const std::string axis = b.text("axis", "polygons");
    if (axis == "polygons") {
        s.axis = SweepAxis::Polygons;
    } else if (axis == "vertices") {
        s.axis = SweepAxis::Vertices;
    } else if (axis == "domain_scale") {
        s.axis = SweepAxis::DomainScale;
    } else {
        throw ConfigError(b.field("axis"), "expected polygons, vertices or domain_scale");
    }
    const json& values = b.require("values");
    if (!values.is_array() || values.empty()) throw ConfigError(b.field("values"), "expected a non-empty array");
    for (const json& v : values) {
        if (!v.is_number() || !(v.get<double>() > 0)) throw ConfigError(b.field("values"), "expected positive numbers");
        if (s.axis != SweepAxis::DomainScale && !v.is_number_unsigned()) {
            throw ConfigError(b.field("values"), "expected positive integers for this axis");
        }
        s.values.push_back(v.get<double>());
    }
    s.repetitions = b.unsigned_int("repetitions", s.repetitions);
    if (s.repetitions < 1) throw ConfigError(b.field("repetitions"), "must be at least 1");
    return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    const Block root(doc, "");
    root.allow({"domain", "sampler", "toolkit", "design", "scaling_study", "output"});

    ExperimentConfig cfg;
    root.require("domain");
    cfg.domain = parse_domain(root.child("domain"));
    cfg.sampler = root.has("sampler") ? parse_sampler(root.child("sampler"), cfg.domain)
                                      : parse_sampler(Block(json::object(), "sampler"), cfg.domain);

    root.require("toolkit");
    const Block tk = root.child("toolkit");
    tk.allow({"estimator", "optimizer", "variation", "mode", "threads"});
    tk.require("estimator");
    cfg.estimator = parse_estimator(tk.child("estimator"));
    if (tk.has("optimizer")) cfg.optimizer = parse_optimizer(tk.child("optimizer"));
    if (tk.has("variation")) cfg.variation = parse_variation(tk.child("variation"));
    cfg.threads = tk.unsigned_int("threads", cfg.threads);

    if (root.has("design")) cfg.design = parse_design(root.child("design"));
    const std::string mode = tk.text("mode", "traditional");
    const auto parsed = parse_design_mode(mode);
    if (!parsed) throw ConfigError(tk.field("mode"), "expected traditional, extra_sampling or random_search");
    cfg.design.mode = *parsed;
    check_design_config(cfg.design);
    if (cfg.design.mode == DesignMode::Traditional && cfg.optimizer.name == "none") {
        throw ConfigError(tk.field("optimizer"), "traditional mode requires an optimizer");
    }

    if (root.has("scaling_study")) cfg.scaling_study = parse_scaling(root.child("scaling_study"));
    cfg.output = root.text("output", "");
    return cfg;
}

EstimatorPtr build_estimator(const EstimatorSpec& spec, const ExperimentConfig& cfg, RandomSource& rng) {
    const Domain& d = cfg.domain;
    EstimatorPtr out;
    if (spec.name == "reference_distance") {
        Structure reference;
        if (spec.reference) {
            reference = *spec.reference;
        } else {
            StandardSampler sampler(d, cfg.sampler);
            reference = sampler.sample_structure(rng);
        }
        out = std::make_shared<ReferenceDistanceEstimator>(std::move(reference), d.diagonal(), spec.samples);
    } else if (spec.name == "road_npv") {
        if (!d.fixed_endpoints) throw ConfigError("domain.fixed_endpoints", "required by the road_npv estimator");
        RoadScenario sc;
        sc.wells = spec.wells;
        sc.endpoints = *d.fixed_endpoints;
        sc.r_road = spec.r_road;
        sc.obstacles = d.prohibited;
        out = std::make_shared<RoadNpvEstimator>(std::move(sc));
    } else if (spec.name == "shadow_waves") {
        WaveScenario sc;
        sc.targets = d.targets;
        sc.wind_direction = spec.wind_direction;
        sc.base_height = spec.base_height;
        sc.protection = spec.protection;
        sc.ray_length = spec.ray_length > 0 ? spec.ray_length : d.diagonal();
        out = std::make_shared<ShadowWaveEstimator>(std::move(sc));
    } else if (spec.name == "composite") {
        out = std::make_shared<CompositeEstimator>(build_estimator(*spec.cheap, cfg, rng),
                                                   build_estimator(*spec.accurate, cfg, rng), spec.threshold);
    } else {
        throw ConfigError("toolkit.estimator.name", "unknown estimator " + spec.name);
    }
    out->set_threads(cfg.threads);
    return out;
}

}  // namespace polygen
