#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "helpers.hpp"
#include "polygen/commands.hpp"
#include "polygen/config.hpp"
#include "polygen/errors.hpp"
#include "polygen/serialization.hpp"
#include "polygen/stats.hpp"

using namespace polygen;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"({
  "domain": {"allowed_area": [[0, 0], [100, 0], [100, 100], [0, 100]], "max_points": 8},
  "toolkit": {"estimator": {"name": "reference_distance"}, "optimizer": {"name": "ga"}},
  "design": {"population_size": 8, "k_select": 4, "max_epochs": 3, "seed": 5}
})";

std::string field_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field;
    }
    return "";
}

std::string with_design(const std::string& design) {
    return R"({"domain": {"allowed_area": [[0, 0], [100, 0], [100, 100], [0, 100]]},
              "toolkit": {"estimator": {"name": "reference_distance"}},
              "design": )" + design + "}";
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("polygen_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const auto p = path / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }
};

std::vector<json> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(json::parse(line));
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig cfg = parse_config(kConfig);
    CHECK(cfg.design.population_size == 8);
    CHECK(cfg.design.selected() == 4);
    CHECK(cfg.domain.max_points == 8);
    CHECK(cfg.optimizer.name == "ga");
    CHECK(cfg.estimator.name == "reference_distance");

    CHECK(field_of(with_design(R"({"population_size": 4, "k_select": 5})")) == "design.k_select");
    CHECK(field_of(with_design(R"({"population_size": 4, "colour": 1})")) == "design.colour");
    CHECK(field_of(with_design(R"({"population_size": "many"})")) == "design.population_size");
    CHECK(field_of("{not json") == "<document>");
    CHECK_FALSE(field_of(R"({"design": {}})").empty());
}

TEST_CASE("serialization round trip is bit exact") {
    RandomSource rng(1);
    for (int t = 0; t < 50; ++t) {
        Structure s;
        for (int p = 0; p < 3; ++p) s.polygons.push_back(testing::random_star(rng, {rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)}, rng.uniform(1e-3, 50), 5));
        const json j = json::parse(structure_to_json(s).dump());
        const Structure back = structure_from_json(j, "s");
        REQUIRE(back.polygons.size() == s.polygons.size());
        for (std::size_t i = 0; i < s.polygons.size(); ++i) {
            CHECK(back.polygons[i].kind == s.polygons[i].kind);
            REQUIRE(back.polygons[i].vertices.size() == s.polygons[i].vertices.size());
            for (std::size_t v = 0; v < s.polygons[i].vertices.size(); ++v) {
                CHECK(back.polygons[i].vertices[v].x == s.polygons[i].vertices[v].x);
                CHECK(back.polygons[i].vertices[v].y == s.polygons[i].vertices[v].y);
            }
        }
    }
    const json nan = objectives_to_json({1.0, std::numeric_limits<double>::infinity()});
    CHECK(nan[1].is_null());
    CHECK(std::isinf(objectives_from_json(nan, "o")[1]));
    CHECK_THROWS_AS(structure_from_json(json{{"kind", "open"}, {"polygons", json::array()}, {"x", 1}}, "s"), ConfigError);
}

TEST_CASE("sha256 known vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("statistics") {
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    const std::vector<double> x{1, 2, 2, 3};
    CHECK(average_ranks(x) == std::vector<double>{1, 2.5, 2.5, 4});
    const std::vector<double> up{1, 2, 3, 4, 5};
    const std::vector<double> sq{1, 4, 9, 16, 25};
    const std::vector<double> down{5, 4, 3, 2, 1};
    const std::vector<double> flat{2, 2, 2, 2, 2};
    CHECK(spearman(up, sq) == doctest::Approx(1.0));
    CHECK(spearman(up, down) == doctest::Approx(-1.0));
    CHECK(spearman(up, flat) == 0.0);
    CHECK_THROWS(spearman(std::vector<double>{1}, std::vector<double>{1}));
}

TEST_CASE("commands") {
    TempDir dir;
    const std::string cfg = dir.file("cfg.json", kConfig);
    std::ostringstream err;

    SUBCASE("run writes epochs and a summary, reproducibly") {
        Overrides ov;
        ov.out = dir.file("a.jsonl");
        REQUIRE(cmd_run(cfg, ov, err) == kExitOk);
        const auto lines = read_lines(*ov.out);
        REQUIRE(lines.size() == 4);
        CHECK(lines[0]["type"] == "epoch");
        CHECK(lines[3]["type"] == "summary");
        CHECK(lines[3]["estimator_calls"]["total"] == 24);
        CHECK_FALSE(lines[3].contains("wall_time_s"));
        Overrides again = ov;
        again.out = dir.file("b.jsonl");
        REQUIRE(cmd_run(cfg, again, err) == kExitOk);
        CHECK(slurp(*ov.out) == slurp(*again.out));

        Overrides other = ov;
        other.seed = 6;
        other.out = dir.file("c.jsonl");
        REQUIRE(cmd_run(cfg, other, err) == kExitOk);
        CHECK(slurp(*ov.out) != slurp(*other.out));
    }

    SUBCASE("sample then validate") {
        Overrides ov;
        ov.out = dir.file("samples.jsonl");
        REQUIRE(cmd_sample(cfg, 50, ov, err) == kExitOk);
        CHECK(read_lines(*ov.out).size() == 50);
        Overrides vo;
        vo.out = dir.file("report.jsonl");
        CHECK(cmd_validate(cfg, *ov.out, vo, err) == kExitOk);
        const auto report = read_lines(*vo.out);
        CHECK(report.back()["valid"] == 50);

        REQUIRE(cmd_sample(cfg, 0, ov, err) == kExitOk);
        CHECK(read_lines(*ov.out).empty());
    }

    SUBCASE("invalid structures and broken inputs") {
        const std::string bad = dir.file("bad.jsonl", R"({"structure": {"kind": "closed", "polygons": [[[0,0],[200,0],[0,10]]]}})" "\n");
        Overrides vo;
        vo.out = dir.file("r.jsonl");
        CHECK(cmd_validate(cfg, bad, vo, err) == kExitInvalid);
        const std::string junk = dir.file("junk.jsonl", "{\"structure\": 3}\n");
        CHECK(cmd_validate(cfg, junk, vo, err) == kExitRuntime);
        const std::string broken = dir.file("broken.json", with_design(R"({"population_size": 4, "k_select": 5})"));
        CHECK(cmd_run(broken, vo, err) == kExitConfig);
        CHECK(err.str().find("design.k_select") != std::string::npos);
    }
}
