#include "polygen/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <openssl/evp.h>

#include "polygen/errors.hpp"

namespace polygen {

std::string_view to_string(PolygonKind kind) { return kind == PolygonKind::Open ? "open" : "closed"; }

json point_to_json(Point p) { return json::array({p.x, p.y}); }

json structure_to_json(const Structure& s) {
    json polys = json::array();
    for (const Polygon& poly : s.polygons) {
        json ring = json::array();
        for (const Point& v : poly.vertices) ring.push_back(point_to_json(v));
        polys.push_back(std::move(ring));
    }
    const PolygonKind kind = s.polygons.empty() ? PolygonKind::Closed : s.polygons.front().kind;
    return json{{"kind", to_string(kind)}, {"polygons", std::move(polys)}};
}

json objectives_to_json(const Objectives& o) {
    json out = json::array();
    for (double v : o) {
        if (std::isfinite(v)) {
            out.push_back(v);
        } else {
            out.push_back(nullptr);
        }
    }
    return out;
}

json epoch_record_to_json(const EpochRecord& rec) {
    json pop = json::array();
    for (const Structure& s : rec.population) pop.push_back(structure_to_json(s));
    json out{{"type", "epoch"},
             {"epoch", rec.epoch},
             {"best_objectives", objectives_to_json(rec.best_objectives)},
             {"hypervolume", nullptr},
             {"estimator_calls", rec.estimator_calls},
             {"population", std::move(pop)}};
    if (rec.hypervolume) out["hypervolume"] = *rec.hypervolume;
    return out;
}

PolygonKind parse_polygon_kind(const json& j, const std::string& field) {
    if (j == "open") return PolygonKind::Open;
    if (j == "closed") return PolygonKind::Closed;
    throw ConfigError(field, "expected \"open\" or \"closed\"");
}

Point point_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(field, "expected a point [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> points_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array of points");
    std::vector<Point> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

Polygon polygon_from_json(const json& j, PolygonKind kind, const std::string& field) {
    return Polygon{points_from_json(j, field), kind};
}

Structure structure_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("polygons")) {
        throw ConfigError(field, "expected {\"kind\", \"polygons\"}");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "kind" && key != "polygons") throw ConfigError(field + "." + key, "unknown key");
    }
    const PolygonKind kind = parse_polygon_kind(j["kind"], field + ".kind");
    const json& polys = j["polygons"];
    if (!polys.is_array()) throw ConfigError(field + ".polygons", "expected an array of polygons");
    Structure s;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        s.polygons.push_back(polygon_from_json(polys[i], kind, field + ".polygons[" + std::to_string(i) + "]"));
    }
    return s;
}

Objectives objectives_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
    Objectives out;
    for (const json& v : j) {
        if (v.is_null()) {
            out.push_back(std::numeric_limits<double>::infinity());
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            throw ConfigError(field, "expected numbers or null");
        }
    }
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

}  // namespace polygen
