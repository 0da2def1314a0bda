#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "polygen/design.hpp"
#include "polygen/geometry.hpp"
#include "polygen/pareto.hpp"

namespace polygen {

using json = nlohmann::json;

std::string_view to_string(PolygonKind kind);

json point_to_json(Point p);
// {"kind": "closed"|"open", "polygons": [[[x, y], ...], ...]}
json structure_to_json(const Structure& s);
// Non-finite values are written as null.
json objectives_to_json(const Objectives& o);
json epoch_record_to_json(const EpochRecord& rec);

// Parsers throw ConfigError naming `field` (a dotted key path).
PolygonKind parse_polygon_kind(const json& j, const std::string& field);
Point point_from_json(const json& j, const std::string& field);
std::vector<Point> points_from_json(const json& j, const std::string& field);
Polygon polygon_from_json(const json& j, PolygonKind kind, const std::string& field);
Structure structure_from_json(const json& j, const std::string& field);
// null decodes to +infinity.
Objectives objectives_from_json(const json& j, const std::string& field);

// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace polygen
