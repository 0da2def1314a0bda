#include "polygen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Distance from p to the nearest point of a closed region's boundary, or 0
// when p is inside it.
double clearance_to(Point p, const Polygon& poly) {
    if (poly.closed() && poly.size() >= 3 && point_in_polygon(p, poly)) return 0.0;
    return point_boundary_distance(p, poly);
}

}  // namespace

SamplerConfig default_sampler_config(const Domain& d) {
    SamplerConfig cfg;
    cfg.rect_area = d.bounds();
    cfg.max_points = d.max_points;
    cfg.n_polygons = d.min_polygons;
    return cfg;
}

void check_sampler_config(const SamplerConfig& cfg, const Domain& d) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("sampler: " + msg); };
    if (!(cfg.rect_area.width() > 0) || !(cfg.rect_area.height() > 0)) fail("rectangle must have positive extent");
    if (cfg.max_points < d.min_points) fail("max_points below the domain's min_points");
    if (cfg.max_points > d.max_points) fail("max_points above the domain's max_points");
    if (cfg.n_polygons < d.min_polygons || cfg.n_polygons > d.max_polygons) fail("n_polygons outside domain bounds");
    if (cfg.attempt_cap < 1) fail("attempt_cap must be >= 1");
    if (cfg.max_radius < 0) fail("max_radius must be non-negative");
}

StandardSampler::StandardSampler(Domain domain, SamplerConfig cfg)
    : domain_(std::move(domain)), cfg_(cfg) {
    check_domain(domain_);
    check_sampler_config(cfg_, domain_);
    radius_limit_ = cfg_.max_radius > 0 ? cfg_.max_radius
                                        : 0.5 * std::min(cfg_.rect_area.width(), cfg_.rect_area.height());
}

bool StandardSampler::region_clear(Point centre, double radius, const Structure& existing) const {
    if (!point_in_polygon(centre, domain_.allowed_area)) return false;
    if (point_boundary_distance(centre, domain_.allowed_area) <= radius) return false;
    for (const Polygon& obstacle : domain_.prohibited) {
        if (clearance_to(centre, obstacle) <= radius) return false;
    }
    for (const Polygon& poly : existing.polygons) {
        if (clearance_to(centre, poly) <= radius) return false;
    }
    return true;
}

Polygon StandardSampler::draw_polygon(const Structure& existing, RandomSource& rng, Point& centroid,
                                      double& radius) {
    const int n_poly = static_cast<int>(existing.polygons.size()) + 1;
    const double bound = radius_limit_ / n_poly;
    const Box& rect = cfg_.rect_area;
    const int recentre_every = std::max(1, cfg_.attempt_cap / 4);

    auto in_sigma = [&](Point p) {
        if (!in_free_space(p, domain_)) return false;
        return std::none_of(existing.polygons.begin(), existing.polygons.end(),
                            [&](const Polygon& q) { return clearance_to(p, q) == 0.0; });
    };

    int attempts = 0;
    auto exhausted = [&] {
        throw SamplingExhausted("sampler: no admissible centroid region after " + std::to_string(cfg_.attempt_cap) +
                                " attempts (polygon " + std::to_string(n_poly) + ")");
    };

    for (;;) {
        Point x{rng.uniform(rect.min_x, rect.max_x), rng.uniform(rect.min_y, rect.max_y)};
        while (!in_sigma(x)) {
            if (++attempts > cfg_.attempt_cap) exhausted();
            x = {rng.uniform(rect.min_x, rect.max_x), rng.uniform(rect.min_y, rect.max_y)};
        }
        bool found = false;
        double r = 0.0;
        for (int radius_attempts = 0; radius_attempts < recentre_every; ++radius_attempts) {
            r = rng.uniform_open_closed(bound);
            if (region_clear(x, r, existing)) {
                found = true;
                break;
            }
            if (++attempts > cfg_.attempt_cap) exhausted();
        }
        if (!found) continue;

        centroid = x;
        radius = r;
        const int lo = std::max(domain_.min_points, domain_.polygon_kind == PolygonKind::Closed ? 3 : 2);
        const auto n_point = static_cast<std::size_t>(rng.uniform_int(lo, cfg_.max_points));
        const double sigma = r / 3.0;
        // Clamp strictly inside the disk so the region test above still covers the polygon.
        const double reach = r * (1.0 - 1e-9);
        Polygon poly;
        poly.kind = domain_.polygon_kind;
        poly.vertices.reserve(n_point);
        while (poly.vertices.size() != n_point) {
            Point p{rng.normal(x.x, sigma), rng.normal(x.y, sigma)};
            const Point offset = p - x;
            const double len = norm(offset);
            if (len > reach) p = x + offset * (reach / len);
            poly.vertices.push_back(p);
        }
        // Polar order about the vertex mean yields a star-shaped, simple ring.
        const Point mean = polygon_centroid(poly);
        auto angle = [&](Point p) { return std::atan2(p.y - mean.y, p.x - mean.x); };
        std::stable_sort(poly.vertices.begin(), poly.vertices.end(),
                         [&](Point a, Point b) { return angle(a) < angle(b); });
        if (!poly.closed() && poly.vertices.size() > 2) {
            std::size_t start = 0;
            double widest = -1.0;
            for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
                double gap = angle(poly.vertices[(i + 1) % poly.vertices.size()]) - angle(poly.vertices[i]);
                if (i + 1 == poly.vertices.size()) gap += kTwoPi;
                if (gap > widest) {
                    widest = gap;
                    start = (i + 1) % poly.vertices.size();
                }
            }
            std::rotate(poly.vertices.begin(), poly.vertices.begin() + static_cast<std::ptrdiff_t>(start),
                        poly.vertices.end());
        }
        return poly;
    }
}

Polygon StandardSampler::sample_polygon(const Structure& existing, RandomSource& rng) {
    Point centroid;
    double radius = 0.0;
    Polygon poly = draw_polygon(existing, rng, centroid, radius);
    if (on_region) {
        on_region({static_cast<int>(existing.polygons.size()),
                   radius_limit_ / static_cast<double>(existing.polygons.size() + 1), radius, centroid});
    }
    return poly;
}

Structure StandardSampler::sample_structure(RandomSource& rng) {
    constexpr int kStructureRetries = 8;
    for (int retry = 0;; ++retry) {
        Structure s;
        for (int k = 0; k < cfg_.n_polygons; ++k) s.polygons.push_back(sample_polygon(s, rng));
        try {
            return postprocess(s, domain_, rng, polygon_source());
        } catch (const RepairFailed&) {
            if (retry + 1 >= kStructureRetries) {
                throw SamplingExhausted("sampler: postprocessing rejected every drawn structure");
            }
        }
    }
}

std::vector<Structure> StandardSampler::sample_batch(std::size_t count, RandomSource& rng) {
    ++batch_calls_;
    std::vector<Structure> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_structure(rng));
    return out;
}

}  // namespace polygen
