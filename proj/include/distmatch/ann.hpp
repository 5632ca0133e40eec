#pragma once

#include <span>
#include <vector>

#include "distmatch/metric.hpp"
#include "distmatch/net_tree.hpp"

namespace distmatch {

/// Dynamic (3/2)-approximate nearest-neighbour index over a subset of the
/// points of a host metric, with fixed-radius queries.
///
/// Queries are either a host index (any point of the host, active or not) or,
/// for Euclidean hosts, an external coordinate tuple. The host must outlive
/// the index.
class AnnIndex {
 public:
  static constexpr double kApproxRatio = 1.5;

  explicit AnnIndex(const FiniteMetric& host) : host_(&host) {}

  void insert(Index i);
  void erase(Index i);
  bool contains(Index i) const { return tree_.contains(i); }
  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.empty(); }

  /// Active point within 3/2 of the nearest active distance. Throws on an
  /// empty index.
  Index query(Index q) const;
  Index query(std::span<const double> q) const;

  /// Exact nearest active point and its distance.
  std::pair<Index, double> nearest(Index q) const;

  /// Active points within distance R of q (inclusive, shared tolerance),
  /// ascending. Does not mutate the index.
  std::vector<Index> range_query(Index q, double R) const;
  std::vector<Index> range_query(std::span<const double> q, double R) const;

  /// Same result computed by repeated approximate queries: report and remove
  /// approximate neighbours while they lie within 3R/2, then reinsert all
  /// removed points. Mutates the index during the call.
  std::vector<Index> range_query_by_deletion(Index q, double R);

  /// Whether some active point lies strictly closer than R to q.
  bool any_closer_than(Index q, double R) const;

  const FiniteMetric& host() const { return *host_; }

 private:
  auto host_dist() const {
    return [m = host_](NetTree::Id a, NetTree::Id b) { return (*m)(a, b); };
  }
  auto index_query(Index q) const {
    return [m = host_, q](NetTree::Id j) { return (*m)(q, j); };
  }
  void check_query(Index q) const;
  void check_query(std::span<const double> q) const;

  const FiniteMetric* host_;
  NetTree tree_;
};

}  // namespace distmatch
