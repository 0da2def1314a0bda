#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "polygen/geometry.hpp"

namespace polygen {

// Objective vector; every component is minimized.
using Objectives = std::vector<double>;

struct Individual {
    Structure structure;
    Objectives objectives;
    // SPEA2 scalar fitness F = R + D, lower is better.
    double fitness = std::numeric_limits<double>::infinity();
};

// Pareto domination. Throws std::invalid_argument on a length mismatch.
bool dominates(const Objectives& a, const Objectives& b);

// Indices of members dominated by no other member, in input order.
std::vector<std::size_t> pareto_front(std::span<const Objectives> points);

// Area dominated by `front` and bounded by `ref` (two objectives). Points not
// strictly better than ref in both coordinates contribute nothing.
double hypervolume_2d(std::span<const Objectives> front, const Objectives& ref);

struct Spea2Fitness {
    std::vector<std::size_t> strength;
    std::vector<double> raw;
    std::vector<double> density;
    std::vector<double> fitness;
};

// Strength, raw fitness, density and total fitness over the pooled set.
// k is the neighbour rank used for the density (clamped to |pool| - 1).
Spea2Fitness spea2_fitness(std::span<const Objectives> pool, std::size_t k);

// round(sqrt(M + N)).
std::size_t default_k_neighbors(std::size_t population_size, std::size_t archive_size);

// Writes F into every member of pop and arch, computed over pop ∪ arch.
void spea2_assign_fitness(std::vector<Individual>& pop, std::vector<Individual>& arch, std::size_t k);

// Indices into `pool` of the next archive: every member with F < 1, truncated
// by the iterative nearest-neighbour rule when there are too many, or padded
// with the lowest-F dominated members when there are too few.
std::vector<std::size_t> environmental_selection_indices(std::span<const Individual> pool, std::size_t target_size);

std::vector<Individual> environmental_selection(const std::vector<Individual>& pop,
                                                const std::vector<Individual>& arch, std::size_t target_size);

// Ascending objective for single-objective individuals, ascending fitness
// otherwise; stable. k larger than the population returns everything.
std::vector<Individual> select_k_best(const std::vector<Individual>& pop, std::size_t k);

// Componentwise max of `points`, pushed outward by 10% of each magnitude.
Objectives default_reference_point(std::span<const Objectives> points);

}  // namespace polygen
