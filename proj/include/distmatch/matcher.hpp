#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "distmatch/metric.hpp"
#include "distmatch/net_tree.hpp"
#include "distmatch/nets.hpp"
#include "distmatch/scale.hpp"

namespace distmatch {

// ---------------------------------------------------------------------------
// Pattern splitting

struct SplitNode {
  std::vector<Index> subset;  // ascending pattern indices
  double beta = 0.0;
  // r_W for subsets of size >= 2; singletons carry their parent's scale (the
  // scale their base case is built at). Unset for a lone root singleton.
  std::optional<Scale> scale;
  int left = -1;
  int right = -1;
  int parent = -1;

  bool is_leaf() const { return left < 0; }
};

/// Node 0 is the root (subset = X, beta = eps). Children of a node W get
/// beta_W / (8|W| - 8).
struct SplitTree {
  std::vector<SplitNode> nodes;
  std::size_t depth() const;
};

/// Kruskal over the subset, stopped when two components remain. Edges are
/// taken in (length, smaller index, larger index) order. P holds subset[0].
std::pair<std::vector<Index>, std::vector<Index>> split_pattern(const FiniteMetric& X,
                                                                std::span<const Index> subset);

SplitTree build_split_tree(const FiniteMetric& X, double eps, double rho);

// ---------------------------------------------------------------------------
// Matching sets

/// Matchings of one pattern subset anchored at one net center, kept pairwise
/// separated in the product metric d_M. Lookups switch from a linear scan to
/// a net tree over the stored matchings once the set grows.
class MatchingSet {
 public:
  static constexpr std::size_t kIndexThreshold = 24;

  explicit MatchingSet(std::size_t width = 0) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return width_ == 0 ? 0 : data_.size() / width_; }
  bool empty() const { return data_.empty(); }

  std::span<const Index> at(std::size_t i) const { return {data_.data() + i * width_, width_}; }
  Matching matching(std::size_t i) const;

  /// d_M between stored matching i and `cand`.
  double distance_to(std::span<const Index> cand, std::size_t i, const FiniteMetric& Y) const;

  /// Whether some stored matching is at d_M strictly below `radius`.
  bool has_closer_than(std::span<const Index> cand, double radius, const FiniteMetric& Y) const;

  /// Appends without a separation check.
  void push(std::span<const Index> cand, const FiniteMetric& Y);

  /// Appends iff no stored matching is strictly closer than `radius`.
  bool try_insert(std::span<const Index> cand, double radius, const FiniteMetric& Y);

 private:
  std::size_t width_;
  std::vector<Index> data_;
  bool indexed_ = false;
  NetTree tree_;
};

/// L(W, beta, r): one MatchingSet per center of the layer at scale r.
struct SetFamily {
  std::vector<Index> domain;  // W, ascending
  double beta = 0.0;
  std::shared_ptr<const NetLayer> layer;
  std::vector<MatchingSet> per_center;  // aligned with layer->centers

  std::size_t total() const;
  std::size_t max_set_size() const;
  std::vector<Matching> all() const;
};

struct SolveStats {
  std::size_t layers_built = 0;
  std::size_t max_set_size = 0;
  std::size_t candidates = 0;  // combinations examined by combine
  std::size_t kept = 0;        // matchings in the root family
  std::optional<Scale> root_scale;
  bool early_exit = false;
};

/// Base case: a (beta r / (2 rho^2))-net of Y, each net point stored as a
/// singleton matching of x at the layer center covering it.
SetFamily base_singleton(Index x, double beta, double rho, std::shared_ptr<const NetLayer> layer,
                         const FiniteMetric& Y);

/// Moves a family from its layer at r to `coarse` at r' >= 2r, greedily
/// keeping matchings at d_M >= beta r' / (2 rho^2) per coarse center.
/// `anc` maps each fine center (aligned with fine centers) to its coarse
/// ancestor.
SetFamily lift(const SetFamily& fine, std::shared_ptr<const NetLayer> coarse,
               std::span<const Index> anc, double rho, const FiniteMetric& Y,
               unsigned threads = 1);

/// Joins families of P and Q on the same layer (with horizontal edges) into
/// a family of P u Q with slack eps. With `first_only` the scan stops at the
/// first center (in ascending order) that keeps a matching, and keeps only
/// that one.
SetFamily combine(const SetFamily& P, const SetFamily& Q, double eps, double rho,
                  const FiniteMetric& X, const FiniteMetric& Y, unsigned threads = 1,
                  bool first_only = false, std::size_t* candidates = nullptr);

// ---------------------------------------------------------------------------
// Driver

struct SolveOptions {
  bool want_all = false;
  unsigned threads = 1;
};

struct SolveResult {
  // Empty when nothing was found. Without want_all at most one matching.
  std::vector<Matching> matchings;
  SolveStats stats;

  bool found() const { return !matchings.empty(); }
};

/// Finds a (1+eps)rho-matching of X into Y whenever a rho-matching exists.
SolveResult solve_distortion(const FiniteMetric& X, const FiniteMetric& Y, double rho, double eps,
                             const SolveOptions& options = {});

}  // namespace distmatch
