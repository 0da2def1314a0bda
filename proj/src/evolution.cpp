#include "polygen/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

Point random_offset(double max_len, RandomSource& rng) {
    const double theta = rng.uniform(0.0, kTwoPi);
    const double len = rng.uniform(0.0, max_len);
    return {len * std::cos(theta), len * std::sin(theta)};
}

std::size_t pick_polygon(const Structure& s, RandomSource& rng, auto&& eligible) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.polygons.size(); ++i) {
        if (eligible(s.polygons[i])) idx.push_back(i);
    }
    return idx[rng.index(idx.size())];
}

}  // namespace

std::string_view to_string(MutationOp op) {
    switch (op) {
        case MutationOp::Rotate: return "rotate";
        case MutationOp::DisplacePolygon: return "displace_polygon";
        case MutationOp::DisplacePoint: return "displace_point";
        case MutationOp::AddPoint: return "add_point";
        case MutationOp::RemovePoint: return "remove_point";
        case MutationOp::AddPolygon: return "add_polygon";
        case MutationOp::RemovePolygon: return "remove_polygon";
    }
    return "unknown";
}

void check_mutation_config(const MutationConfig& cfg) {
    double sum = 0.0;
    for (double w : cfg.operator_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("mutation: weights must be finite and >= 0");
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("mutation: weights must not all be zero");
    if (!(cfg.max_rotation_deg >= 0.0)) throw std::invalid_argument("mutation: max_rotation_deg must be >= 0");
    if (!(cfg.displacement_fraction >= 0.0)) throw std::invalid_argument("mutation: displacement_fraction must be >= 0");
}

std::array<bool, kMutationOpCount> skipped_operators(const Structure& s, const Domain& d) {
    std::array<bool, kMutationOpCount> skip{};
    const bool empty = s.polygons.empty();
    auto any = [&](auto&& pred) { return std::any_of(s.polygons.begin(), s.polygons.end(), pred); };
    skip[static_cast<std::size_t>(MutationOp::Rotate)] = empty;
    skip[static_cast<std::size_t>(MutationOp::DisplacePolygon)] = empty;
    skip[static_cast<std::size_t>(MutationOp::DisplacePoint)] = empty;
    skip[static_cast<std::size_t>(MutationOp::AddPoint)] =
        !any([&](const Polygon& p) { return static_cast<int>(p.size()) < d.max_points && p.edge_count() > 0; });
    skip[static_cast<std::size_t>(MutationOp::RemovePoint)] =
        !any([&](const Polygon& p) { return static_cast<int>(p.size()) > d.min_points; });
    skip[static_cast<std::size_t>(MutationOp::AddPolygon)] = static_cast<int>(s.polygons.size()) >= d.max_polygons;
    skip[static_cast<std::size_t>(MutationOp::RemovePolygon)] = static_cast<int>(s.polygons.size()) <= d.min_polygons;
    return skip;
}

std::optional<MutationOp> choose_operator(const Structure& s, const Domain& d, const MutationConfig& cfg,
                                          RandomSource& rng) {
    const auto skip = skipped_operators(s, d);
    std::array<double, kMutationOpCount> w{};
    double total = 0.0;
    std::size_t open = 0;
    for (std::size_t i = 0; i < kMutationOpCount; ++i) {
        if (skip[i]) continue;
        ++open;
        w[i] = cfg.operator_weights[i];
        total += w[i];
    }
    if (open == 0) return std::nullopt;
    if (total <= 0.0) {
        for (std::size_t i = 0; i < kMutationOpCount; ++i) w[i] = skip[i] ? 0.0 : 1.0;
        total = static_cast<double>(open);
    }
    double u = rng.uniform(0.0, total);
    std::size_t last = 0;
    for (std::size_t i = 0; i < kMutationOpCount; ++i) {
        if (w[i] <= 0.0) continue;
        last = i;
        if (u < w[i]) return static_cast<MutationOp>(i);
        u -= w[i];
    }
    return static_cast<MutationOp>(last);
}

Structure apply_operator(const Structure& s, MutationOp op, const Domain& d, const MutationConfig& cfg,
                         Sampler& sampler, RandomSource& rng) {
    if (skipped_operators(s, d)[static_cast<std::size_t>(op)]) return s;
    Structure out = s;
    const double reach = cfg.displacement_fraction * d.diagonal();
    auto all = [](const Polygon&) { return true; };
    switch (op) {
        case MutationOp::Rotate: {
            const std::size_t i = pick_polygon(out, rng, all);
            out.polygons[i] = rotate_polygon(out.polygons[i], rng.uniform(-cfg.max_rotation_deg, cfg.max_rotation_deg));
            break;
        }
        case MutationOp::DisplacePolygon: {
            const std::size_t i = pick_polygon(out, rng, all);
            out.polygons[i] = translate_polygon(out.polygons[i], random_offset(reach, rng));
            break;
        }
        case MutationOp::DisplacePoint: {
            Polygon& poly = out.polygons[pick_polygon(out, rng, all)];
            Point& v = poly.vertices[rng.index(poly.vertices.size())];
            v = v + random_offset(reach, rng);
            break;
        }
        case MutationOp::AddPoint: {
            Polygon& poly = out.polygons[pick_polygon(out, rng, [&](const Polygon& p) {
                return static_cast<int>(p.size()) < d.max_points && p.edge_count() > 0;
            })];
            const std::size_t e = rng.index(poly.edge_count());
            const auto [a, b] = poly.edge(e);
            const double sigma = distance(a, b) / 6.0;
            Point mid = a + (b - a) * 0.5;
            if (sigma > 0) mid = {rng.normal(mid.x, sigma), rng.normal(mid.y, sigma)};
            poly.vertices.insert(poly.vertices.begin() + static_cast<std::ptrdiff_t>(e + 1), mid);
            break;
        }
        case MutationOp::RemovePoint: {
            Polygon& poly = out.polygons[pick_polygon(
                out, rng, [&](const Polygon& p) { return static_cast<int>(p.size()) > d.min_points; })];
            poly.vertices.erase(poly.vertices.begin() + static_cast<std::ptrdiff_t>(rng.index(poly.vertices.size())));
            break;
        }
        case MutationOp::AddPolygon:
            out.polygons.push_back(sampler.sample_polygon(out, rng));
            break;
        case MutationOp::RemovePolygon:
            out.polygons.erase(out.polygons.begin() + static_cast<std::ptrdiff_t>(rng.index(out.polygons.size())));
            break;
    }
    return out;
}

Structure mutate(const Structure& s, const Domain& d, const MutationConfig& cfg, Sampler& sampler,
                 RandomSource& rng) {
    const auto op = choose_operator(s, d, cfg, rng);
    if (!op) return s;
    try {
        return postprocess(apply_operator(s, *op, d, cfg, sampler, rng), d, rng, sampler.polygon_source());
    } catch (const RepairFailed& e) {
        throw MutationFailed(std::string("mutate(") + std::string(to_string(*op)) + "): " + e.what());
    } catch (const SamplingExhausted& e) {
        throw MutationFailed(std::string("mutate(") + std::string(to_string(*op)) + "): " + e.what());
    }
}

Polygon splice_polygons(const Polygon& a, const Polygon& b, std::size_t cut_a, std::size_t cut_b) {
    Polygon child;
    child.kind = a.kind;
    cut_a = std::min(cut_a, a.vertices.size());
    cut_b = std::min(cut_b, b.vertices.size());
    child.vertices.assign(a.vertices.begin(), a.vertices.begin() + static_cast<std::ptrdiff_t>(cut_a));
    child.vertices.insert(child.vertices.end(), b.vertices.begin() + static_cast<std::ptrdiff_t>(cut_b),
                          b.vertices.end());
    return child;
}

Structure recombine(const Structure& a, const Structure& b, const Domain& d, RandomSource& rng) {
    if (a.polygons.size() == 1 && b.polygons.size() == 1) {
        const Polygon& pa = a.polygons.front();
        const Polygon& pb = b.polygons.front();
        const std::size_t cut_a = rng.index(pa.vertices.size());
        const std::size_t cut_b = rng.index(pb.vertices.size());
        return Structure{{splice_polygons(pa, pb, cut_a, cut_b)}};
    }
    Structure child;
    if (!a.polygons.empty()) {
        // Uniform non-empty subset of a: each polygon w.p. 1/2, rejecting the empty draw.
        std::vector<bool> take(a.polygons.size());
        do {
            for (std::size_t i = 0; i < take.size(); ++i) take[i] = rng.bernoulli(0.5);
        } while (std::none_of(take.begin(), take.end(), [](bool t) { return t; }));
        for (std::size_t i = 0; i < take.size(); ++i) {
            if (take[i]) child.polygons.push_back(a.polygons[i]);
        }
    }
    for (const Polygon& p : b.polygons) {
        if (rng.bernoulli(0.5)) child.polygons.push_back(p);
    }
    const auto limit = static_cast<std::size_t>(d.max_polygons);
    if (child.polygons.size() > limit) {
        std::stable_sort(child.polygons.begin(), child.polygons.end(), [](const Polygon& l, const Polygon& r) {
            return polygon_length(l) > polygon_length(r);
        });
        child.polygons.resize(limit);
    }
    return child;
}

Structure crossover(const Structure& a, const Structure& b, const Domain& d, Sampler& sampler, RandomSource& rng) {
    try {
        return postprocess(recombine(a, b, d, rng), d, rng, sampler.polygon_source());
    } catch (const RepairFailed& e) {
        throw CrossoverFailed(std::string("crossover: ") + e.what());
    } catch (const SamplingExhausted& e) {
        throw CrossoverFailed(std::string("crossover: ") + e.what());
    }
}

}  // namespace polygen
