#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "polygen/domain.hpp"
#include "polygen/geometry.hpp"
#include "polygen/random.hpp"
#include "polygen/sampler.hpp"

namespace polygen {

enum class MutationOp : std::size_t {
    Rotate,
    DisplacePolygon,
    DisplacePoint,
    AddPoint,
    RemovePoint,
    AddPolygon,
    RemovePolygon,
};

inline constexpr std::size_t kMutationOpCount = 7;

std::string_view to_string(MutationOp op);

struct MutationConfig {
    double max_rotation_deg = 45.0;
    // Displacement radius as a fraction of the domain diagonal.
    double displacement_fraction = 0.05;
    std::array<double, kMutationOpCount> operator_weights{1, 1, 1, 1, 1, 1, 1};
};

void check_mutation_config(const MutationConfig& cfg);

// Operators that cannot fire on `s` (vertex or polygon limits reached).
std::array<bool, kMutationOpCount> skipped_operators(const Structure& s, const Domain& d);

// Weighted choice among non-skipped operators; falls back to a uniform choice
// when every remaining weight is zero. Empty when nothing can fire.
std::optional<MutationOp> choose_operator(const Structure& s, const Domain& d, const MutationConfig& cfg,
                                          RandomSource& rng);

// Applies a single operator without repair. Returns the input untouched if the
// operator is skipped for this structure.
Structure apply_operator(const Structure& s, MutationOp op, const Domain& d, const MutationConfig& cfg,
                         Sampler& sampler, RandomSource& rng);

// One weighted geometric mutation followed by postprocessing. Throws
// MutationFailed when repair fails.
Structure mutate(const Structure& s, const Domain& d, const MutationConfig& cfg, Sampler& sampler,
                 RandomSource& rng);

// Prefix [0, cut_a) of a's ring followed by suffix [cut_b, n) of b's ring.
Polygon splice_polygons(const Polygon& a, const Polygon& b, std::size_t cut_a, std::size_t cut_b);

// Pre-repair child: vertex splice for two single-polygon parents, polygon
// exchange otherwise.
Structure recombine(const Structure& a, const Structure& b, const Domain& d, RandomSource& rng);

// recombine() followed by postprocessing. Throws CrossoverFailed when repair fails.
Structure crossover(const Structure& a, const Structure& b, const Domain& d, Sampler& sampler,
                    RandomSource& rng);

}  // namespace polygen
