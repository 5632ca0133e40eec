#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "distmatch/metric.hpp"

namespace distmatch {

/// Simple undirected graph on vertices 0..m-1.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges);

  /// Erdos-Renyi sample: every pair becomes an edge with probability p.
  static Graph random(std::size_t m, double p, std::mt19937_64& rng);

  std::size_t m() const { return m_; }
  /// Unique edges as (u, v) with u < v, ascending.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const;
  bool is_clique(const std::vector<std::size_t>& vertices) const;

  /// Same graph with a clique planted on the given vertices.
  Graph with_clique(const std::vector<std::size_t>& vertices) const;

 private:
  std::size_t m_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<bool> adj_;
};

/// Ring gadget instance. Y point (ring i, vertex j) has flat index i*m + j;
/// X point i stands for ring i. The min-distortion variant appends one more
/// point to each side at distance lambda from all others.
struct CliqueInstance {
  Graph graph;
  std::size_t k = 0;
  double rho = 1.0;
  FiniteMetric X;
  FiniteMetric Y;
  std::optional<double> lambda;
  // Ring distances times m, row-major over the k*m ring points; exact.
  std::vector<std::int64_t> numerators;

  std::size_t m() const { return graph.m(); }
  std::size_t ring_points() const { return k * graph.m(); }
  std::size_t flat_index(std::size_t ring, std::size_t vertex) const;
  /// (ring, vertex) of a ring point; throws for the lambda point.
  std::pair<std::size_t, std::size_t> decode(std::size_t flat) const;
  bool is_lambda_point(std::size_t flat) const { return lambda && flat == ring_points(); }
};

inline constexpr std::size_t kMinGadgetVertices = 24;

CliqueInstance gen_clique_instance(const Graph& G, std::size_t k, double rho);

/// Adds the lambda = 5 m rho^2 2^k points to both spaces.
CliqueInstance gen_min_distortion_instance(const Graph& G, std::size_t k, double rho);

/// Vertices named by the ring-point targets of sigma (any ring order),
/// ascending and deduplicated. The lambda point is skipped.
std::vector<std::size_t> matching_to_clique(const Matching& sigma, const CliqueInstance& inst);

/// The matching x_i -> (ring i, vertices[i]) plus the lambda pair if present.
Matching clique_to_matching(const std::vector<std::size_t>& vertices, const CliqueInstance& inst);

/// Triangle inequality on the exact numerators; returns the first violating
/// triple (i, j, l) with d(i,j) > d(i,l) + d(l,j).
std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> exact_triangle_violation(
    const CliqueInstance& inst);

struct CoverFailure {
  Index center;
  double radius;
};

/// For every center p and every radius r among the pairwise distances,
/// checks that ball(p, r) is covered by at most `balls` balls of radius r/2
/// centred at points of Y. Exhaustive; meant for small spaces.
std::optional<CoverFailure> doubling_cover_check(const FiniteMetric& Y, std::size_t balls = 3);

}  // namespace distmatch
