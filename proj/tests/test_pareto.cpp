#include <doctest.h>

#include <algorithm>
#include <limits>

#include "oracles.hpp"
#include "polygen/pareto.hpp"
#include "polygen/random.hpp"

using namespace polygen;

namespace {

std::vector<Objectives> random_points(RandomSource& rng, std::size_t n, std::size_t m, bool grid) {
    std::vector<Objectives> pts(n, Objectives(m));
    for (auto& p : pts) {
        for (double& v : p) v = grid ? static_cast<double>(rng.uniform_int(0, 6)) : rng.uniform(0, 10);
    }
    return pts;
}

std::vector<Individual> as_individuals(const std::vector<Objectives>& pts) {
    std::vector<Individual> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i].objectives = pts[i];
    return out;
}

}  // namespace

TEST_CASE("dominance examples") {
    CHECK(dominates({1, 2}, {2, 3}));
    CHECK_FALSE(dominates({1, 3}, {3, 1}));
    CHECK_FALSE(dominates({3, 1}, {1, 3}));
    CHECK_FALSE(dominates({1, 2}, {1, 2}));
    CHECK_THROWS_AS(dominates({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("dominance is a strict partial order") {
    RandomSource rng(1);
    for (int t = 0; t < 300; ++t) {
        const auto pts = random_points(rng, 3, 1 + t % 3, true);
        const auto &a = pts[0], &b = pts[1], &c = pts[2];
        CHECK_FALSE(dominates(a, a));
        CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
        CHECK(dominates(a, b) == oracle::dominates(a, b));
    }
}

TEST_CASE("pareto front examples and oracle") {
    CHECK(pareto_front(std::vector<Objectives>{{1, 3}, {2, 2}, {3, 1}, {3, 3}}) == std::vector<std::size_t>{0, 1, 2});
    CHECK(pareto_front(std::vector<Objectives>{{4, 4}}) == std::vector<std::size_t>{0});
    CHECK(pareto_front(std::vector<Objectives>{{1, 1}, {1, 1}}) == std::vector<std::size_t>{0, 1});
    RandomSource rng(2);
    for (int t = 0; t < 200; ++t) {
        const auto pts = random_points(rng, rng.uniform_int(1, 60), 2 + t % 2, t % 3 == 0);
        CHECK(pareto_front(pts) == oracle::front_by_pairs(pts));
    }
}

TEST_CASE("hypervolume examples") {
    CHECK(hypervolume_2d(std::vector<Objectives>{{1, 2}, {2, 1}}, {3, 3}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(hypervolume_2d(std::vector<Objectives>{{1, 1}}, {2, 2}) == doctest::Approx(1.0));
    CHECK(hypervolume_2d(std::vector<Objectives>{{3, 3}}, {3, 3}) == 0.0);
    CHECK(hypervolume_2d(std::vector<Objectives>{}, {3, 3}) == 0.0);
    // Dominated points contribute nothing.
    CHECK(hypervolume_2d(std::vector<Objectives>{{1, 2}, {2, 1}, {2, 2}}, {3, 3}) == doctest::Approx(3.0));
}

TEST_CASE("hypervolume against Monte Carlo") {
    RandomSource rng(3);
    RandomSource mc(4);
    for (int t = 0; t < 10; ++t) {
        const auto pts = random_points(rng, rng.uniform_int(1, 10), 2, false);
        const Objectives ref{11, 11};
        const double exact = hypervolume_2d(pts, ref);
        const double approx = oracle::hypervolume_mc(pts, ref, 200000, mc);
        CHECK(std::abs(exact - approx) <= 0.02 * exact);
    }
}

TEST_CASE("SPEA2 fitness") {
    const auto chain = spea2_fitness(std::vector<Objectives>{{1, 1}, {2, 2}, {3, 3}}, 1);
    CHECK(chain.raw == std::vector<double>{0, 2, 3});
    CHECK(chain.strength == std::vector<std::size_t>{2, 1, 0});
    const auto single = spea2_fitness(std::vector<Objectives>{{1, 1}}, 1);
    CHECK(single.density[0] == 0.5);

    RandomSource rng(5);
    for (int t = 0; t < 200; ++t) {
        const auto pts = random_points(rng, rng.uniform_int(1, 20), 2, t % 2 == 0);
        const auto fit = spea2_fitness(pts, default_k_neighbors(pts.size(), 0));
        const auto front = oracle::front_by_pairs(pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const bool nondominated = std::find(front.begin(), front.end(), i) != front.end();
            CHECK((fit.fitness[i] < 1.0) == nondominated);
            CHECK(fit.density[i] > 0.0);
            CHECK(fit.density[i] <= 0.5);
        }
    }
}

TEST_CASE("environmental selection") {
    auto run = [](const std::vector<Objectives>& pts, std::size_t target) {
        auto pop = as_individuals(pts);
        std::vector<Individual> arch;
        spea2_assign_fitness(pop, arch, 1);
        return environmental_selection(pop, arch, target);
    };
    const std::vector<Objectives> nd{{1, 5}, {2, 4}, {3, 3}, {4, 2}, {5, 1}};
    const auto same = run({{1, 3}, {2, 2}, {3, 1}}, 3);
    CHECK(same.size() == 3);
    CHECK(same[0].objectives == Objectives{1, 3});

    const auto cut = run(nd, 3);
    CHECK(cut.size() == 3);
    for (const auto& ind : cut) CHECK(std::find(nd.begin(), nd.end(), ind.objectives) != nd.end());

    const auto filled = run({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}, 3);
    REQUIRE(filled.size() == 3);
    CHECK(filled[0].objectives == Objectives{1, 1});
    CHECK(filled[1].objectives == Objectives{2, 2});
    CHECK(filled[2].objectives == Objectives{3, 3});
}

TEST_CASE("archive is mutually non-dominated when enough non-dominated exist") {
    RandomSource rng(6);
    for (int t = 0; t < 200; ++t) {
        const auto pts = random_points(rng, rng.uniform_int(2, 25), 2, false);
        const std::size_t target = rng.uniform_int(1, 10);
        auto pop = as_individuals(pts);
        std::vector<Individual> arch;
        spea2_assign_fitness(pop, arch, default_k_neighbors(pop.size(), 0));
        const auto kept = environmental_selection(pop, arch, target);
        CHECK(kept.size() == std::min(target, pts.size()));
        if (oracle::front_by_pairs(pts).size() >= target) {
            for (const auto& a : kept) {
                for (const auto& b : kept) CHECK_FALSE(dominates(a.objectives, b.objectives));
            }
        }
    }
}

TEST_CASE("truncation removes the most crowded member") {
    auto pop = as_individuals({{0, 10}, {4.9, 5.1}, {5, 5}, {10, 0}});
    std::vector<Individual> arch;
    spea2_assign_fitness(pop, arch, 1);
    const auto idx = environmental_selection_indices(pop, 3);
    CHECK(idx.size() == 3);
    CHECK(std::find(idx.begin(), idx.end(), 0) != idx.end());
    CHECK(std::find(idx.begin(), idx.end(), 3) != idx.end());
}

TEST_CASE("select k best") {
    auto pop = as_individuals({{3}, {1}, {2}});
    const auto best = select_k_best(pop, 2);
    CHECK(best[0].objectives[0] == 1);
    CHECK(best[1].objectives[0] == 2);
    CHECK(select_k_best(pop, 3).size() == 3);

    auto bi = as_individuals({{1, 4}, {4, 1}, {3, 5}, {5, 3}, {6, 6}});
    std::vector<Individual> arch;
    spea2_assign_fitness(bi, arch, 1);
    const auto two = select_k_best(bi, 2);
    std::vector<Objectives> got{two[0].objectives, two[1].objectives};
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<Objectives>{{1, 4}, {4, 1}});
}

TEST_CASE("default reference point and k") {
    CHECK(default_reference_point(std::vector<Objectives>{{1, 10}, {2, 5}}) == Objectives{2.2, 11.0});
    CHECK(default_reference_point(std::vector<Objectives>{{0, -10}}) == Objectives{0.1, -9.0});
    CHECK(default_k_neighbors(30, 15) == 7);
}
