#include "polygen/random.hpp"

#include <cassert>

namespace polygen {

double RandomSource::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

double RandomSource::uniform_open_closed(double hi) {
    return hi * (1.0 - uniform(0.0, 1.0));
}

std::int64_t RandomSource::uniform_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    return dist(engine_);
}

std::size_t RandomSource::index(std::size_t n) {
    assert(n > 0);
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
}

double RandomSource::normal(double mean, double stddev) {
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
}

bool RandomSource::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform(0.0, 1.0) < p;
}

RandomSource RandomSource::split() {
    // splitmix64 finalizer decorrelates the child seed from the parent state
    std::uint64_t z = engine_() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return RandomSource(z ^ (z >> 31));
}

}  // namespace polygen
