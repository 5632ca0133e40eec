#include "distmatch/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace distmatch {

FiniteMetric random_euclidean(std::size_t n, std::size_t dim, double side, std::mt19937_64& rng) {
  for (;;) {
    std::vector<double> coords(n * dim);
    for (double& c : coords) c = uniform01(rng) * side;
    try {
      return FiniteMetric::from_flat_points(dim, std::move(coords));
    } catch (const std::invalid_argument&) {
      // A duplicate point; draw again.
    }
  }
}

FiniteMetric random_tree_metric(std::size_t n, double spread, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("random_tree_metric: n must be positive");
  std::vector<std::size_t> parent(n, 0);
  std::vector<double> up(n, 0.0);
  for (std::size_t v = 1; v < n; ++v) {
    parent[v] = uniform_index(v, rng);
    up[v] = 1.0 + uniform01(rng) * spread;
  }
  // Depth-from-root distances give d(u,v) = depth u + depth v - 2 depth lca.
  std::vector<double> table(n * n, 0.0);
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t p = parent[v];
    for (std::size_t u = 0; u < v; ++u) {
      const double d = u == p ? up[v] : table[p * n + u] + up[v];
      table[v * n + u] = table[u * n + v] = d;
    }
  }
  return FiniteMetric::from_flat_matrix(n, std::move(table), /*validate=*/false);
}

FiniteMetric submetric(const FiniteMetric& S, const std::vector<Index>& indices) {
  if (S.is_euclidean()) {
    std::vector<double> coords;
    for (Index i : indices) {
      auto p = S.point(i);
      coords.insert(coords.end(), p.begin(), p.end());
    }
    return FiniteMetric::from_flat_points(S.dim(), std::move(coords));
  }
  const std::size_t k = indices.size();
  std::vector<double> table(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) table[a * k + b] = S.distance(indices[a], indices[b]);
  }
  return FiniteMetric::from_flat_matrix(k, std::move(table), /*validate=*/false);
}

FiniteMetric jittered_subset(const FiniteMetric& S, const std::vector<Index>& indices, double jitter,
                             std::mt19937_64& rng) {
  if (!S.is_euclidean()) throw std::invalid_argument("jittered_subset: needs a Euclidean space");
  for (;;) {
    std::vector<double> coords;
    for (Index i : indices) {
      for (double c : S.point(i)) coords.push_back(c + (2.0 * uniform01(rng) - 1.0) * jitter);
    }
    try {
      return FiniteMetric::from_flat_points(S.dim(), std::move(coords));
    } catch (const std::invalid_argument&) {
    }
  }
}

std::vector<Index> random_subset(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  if (k > n) throw std::invalid_argument("random_subset: k > n");
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + uniform_index(n - i, rng)]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

PlantedInstance planted_instance(std::size_t n, std::size_t k, std::uint64_t shape_seed,
                                 std::mt19937_64& rng) {
  if (k == 0 || k > n) throw std::invalid_argument("planted_instance: need 1 <= k <= n");
  std::mt19937_64 shape_rng(shape_seed);
  std::vector<double> shape;
  for (std::size_t i = 0; i < k; ++i) {
    shape.push_back(uniform01(shape_rng) * 1.5);
    shape.push_back(uniform01(shape_rng) * 1.5);
  }
  const double side = std::sqrt(static_cast<double>(n));
  for (;;) {
    std::vector<double> coords(2 * n);
    for (double& c : coords) c = uniform01(rng) * side;
    PlantedInstance out;
    out.planted = random_subset(k, n, rng);
    const double ox = uniform01(rng) * (side - 1.5);
    const double oy = uniform01(rng) * (side - 1.5);
    for (std::size_t i = 0; i < k; ++i) {
      coords[2 * out.planted[i]] = ox + shape[2 * i];
      coords[2 * out.planted[i] + 1] = oy + shape[2 * i + 1];
    }
    try {
      out.Y = FiniteMetric::from_flat_points(2, std::move(coords));
      out.X = FiniteMetric::from_flat_points(2, shape);
      return out;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace distmatch
