#pragma once

#include <cstdint>
#include <random>

namespace polygen {

// Explicit, copyable random stream. Every stochastic operation takes one of
// these by reference so runs are reproducible from a single master seed.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Uniform on (0, hi].
    double uniform_open_closed(double hi);
    // Uniform integer on [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    std::size_t index(std::size_t n);
    double normal(double mean, double stddev);
    bool bernoulli(double p);

    // Independent child stream; advances this stream by one draw.
    RandomSource split();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace polygen
