#pragma once

#include <span>
#include <vector>

namespace polygen {

// Throws std::invalid_argument on an empty sample.
double median(std::vector<double> values);

// 1-based ranks; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of the average ranks. Returns 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace polygen
