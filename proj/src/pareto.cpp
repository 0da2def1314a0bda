#include "polygen/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polygen {

namespace {

double objective_distance(const Objectives& a, const Objectives& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

bool dominates(const Objectives& a, const Objectives& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: objective vectors differ in length");
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

std::vector<std::size_t> pareto_front(std::span<const Objectives> points) {
    // Sort by the first objective (then lexicographically) so that any
    // dominator of a point precedes it; only earlier survivors need checking.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return points[l] < points[r]; });
    std::vector<std::size_t> front;
    for (std::size_t idx : order) {
        const bool beaten = std::any_of(front.begin(), front.end(),
                                        [&](std::size_t f) { return dominates(points[f], points[idx]); });
        if (!beaten) front.push_back(idx);
    }
    std::sort(front.begin(), front.end());
    return front;
}

double hypervolume_2d(std::span<const Objectives> front, const Objectives& ref) {
    if (ref.size() != 2) throw std::invalid_argument("hypervolume_2d: reference point must have 2 objectives");
    std::vector<std::pair<double, double>> pts;
    for (const Objectives& p : front) {
        if (p.size() != 2) throw std::invalid_argument("hypervolume_2d: points must have 2 objectives");
        if (p[0] < ref[0] && p[1] < ref[1]) pts.emplace_back(p[0], p[1]);
    }
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double ceiling = ref[1];
    for (const auto& [x, y] : pts) {
        if (y < ceiling) {
            area += (ref[0] - x) * (ceiling - y);
            ceiling = y;
        }
    }
    return area;
}

Spea2Fitness spea2_fitness(std::span<const Objectives> pool, std::size_t k) {
    const std::size_t n = pool.size();
    Spea2Fitness out;
    out.strength.assign(n, 0);
    out.raw.assign(n, 0.0);
    out.density.assign(n, 0.0);
    out.fitness.assign(n, 0.0);
    std::vector<std::vector<bool>> beats(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(pool[i], pool[j])) {
                beats[i][j] = true;
                ++out.strength[i];
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (beats[i][j]) out.raw[j] += static_cast<double>(out.strength[i]);
        }
    }
    std::vector<double> dist;
    for (std::size_t i = 0; i < n; ++i) {
        dist.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) dist.push_back(objective_distance(pool[i], pool[j]));
        }
        double dk = 0.0;
        if (!dist.empty()) {
            const std::size_t rank = std::clamp<std::size_t>(k, 1, dist.size()) - 1;
            std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(rank), dist.end());
            dk = dist[rank];
        }
        out.density[i] = 1.0 / (dk + 2.0);
        out.fitness[i] = out.raw[i] + out.density[i];
    }
    return out;
}

std::size_t default_k_neighbors(std::size_t population_size, std::size_t archive_size) {
    return static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(population_size + archive_size))));
}

void spea2_assign_fitness(std::vector<Individual>& pop, std::vector<Individual>& arch, std::size_t k) {
    std::vector<Objectives> pool;
    pool.reserve(pop.size() + arch.size());
    for (const auto& ind : pop) pool.push_back(ind.objectives);
    for (const auto& ind : arch) pool.push_back(ind.objectives);
    const auto fit = spea2_fitness(pool, k);
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i].fitness = fit.fitness[i];
    for (std::size_t i = 0; i < arch.size(); ++i) arch[i].fitness = fit.fitness[pop.size() + i];
}

std::vector<std::size_t> environmental_selection_indices(std::span<const Individual> pool, std::size_t target_size) {
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        (pool[i].fitness < 1.0 ? chosen : rest).push_back(i);
    }
    if (chosen.size() < target_size) {
        std::stable_sort(rest.begin(), rest.end(),
                         [&](std::size_t l, std::size_t r) { return pool[l].fitness < pool[r].fitness; });
        const std::size_t fill = std::min(target_size - chosen.size(), rest.size());
        chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(fill));
        return chosen;
    }
    if (chosen.size() == target_size) return chosen;

    // Truncation: repeatedly drop the member whose sorted distance list to the
    // remaining members is lexicographically smallest.
    const std::size_t n = chosen.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dist[i][j] = dist[j][i] = objective_distance(pool[chosen[i]].objectives, pool[chosen[j]].objectives);
        }
    }
    std::vector<bool> alive(n, true);
    std::size_t remaining = n;
    std::vector<double> row;
    std::vector<double> worst_row;
    while (remaining > target_size) {
        std::size_t victim = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            row.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && alive[j]) row.push_back(dist[i][j]);
            }
            std::sort(row.begin(), row.end());
            if (victim == n || row < worst_row) {
                victim = i;
                worst_row = row;
            }
        }
        alive[victim] = false;
        --remaining;
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) kept.push_back(chosen[i]);
    }
    return kept;
}

std::vector<Individual> environmental_selection(const std::vector<Individual>& pop,
                                                const std::vector<Individual>& arch, std::size_t target_size) {
    std::vector<Individual> pool = pop;
    pool.insert(pool.end(), arch.begin(), arch.end());
    std::vector<Individual> out;
    for (std::size_t idx : environmental_selection_indices(pool, target_size)) out.push_back(pool[idx]);
    return out;
}

std::vector<Individual> select_k_best(const std::vector<Individual>& pop, std::size_t k) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    const bool single = !pop.empty() && pop.front().objectives.size() == 1;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return single ? pop[l].objectives[0] < pop[r].objectives[0] : pop[l].fitness < pop[r].fitness;
    });
    order.resize(std::min(k, order.size()));
    std::vector<Individual> out;
    out.reserve(order.size());
    for (std::size_t idx : order) out.push_back(pop[idx]);
    return out;
}

Objectives default_reference_point(std::span<const Objectives> points) {
    if (points.empty()) throw std::invalid_argument("default_reference_point: no points");
    Objectives ref = points.front();
    for (const auto& p : points) {
        for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = std::max(ref[i], p[i]);
    }
    for (double& r : ref) r = r == 0.0 ? 0.1 : r + 0.1 * std::abs(r);
    return ref;
}

}  // namespace polygen
