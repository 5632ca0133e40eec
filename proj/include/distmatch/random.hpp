#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "distmatch/metric.hpp"

namespace distmatch {

/// Uniform double in [0, 1) from 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform index in [0, n).
inline std::size_t uniform_index(std::size_t n, std::mt19937_64& rng) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

/// n distinct points uniform in [0, side]^dim.
FiniteMetric random_euclidean(std::size_t n, std::size_t dim, double side, std::mt19937_64& rng);

/// Shortest-path metric of a random tree on n vertices with edge lengths in
/// [1, 1 + spread).
FiniteMetric random_tree_metric(std::size_t n, double spread, std::mt19937_64& rng);

/// Sub-metric on the given indices (same form as the source).
FiniteMetric submetric(const FiniteMetric& S, const std::vector<Index>& indices);

/// Euclidean sub-metric with every coordinate moved by up to +-jitter.
FiniteMetric jittered_subset(const FiniteMetric& S, const std::vector<Index>& indices, double jitter,
                             std::mt19937_64& rng);

/// k distinct indices out of n, ascending.
std::vector<Index> random_subset(std::size_t k, std::size_t n, std::mt19937_64& rng);

struct PlantedInstance {
  FiniteMetric X;
  FiniteMetric Y;
  std::vector<Index> planted;  // where X sits inside Y
};

/// n points of unit density in the plane with an exact copy of a k-point
/// pattern planted at a random spot. The pattern's shape depends only on
/// `shape_seed`, so it is the same for every n.
PlantedInstance planted_instance(std::size_t n, std::size_t k, std::uint64_t shape_seed,
                                 std::mt19937_64& rng);

}  // namespace distmatch
