#pragma once

#include <cstddef>
#include <vector>

#include "distmatch/metric.hpp"
#include "distmatch/net_tree.hpp"

namespace distmatch {

/// A subset of S implied by a net-tree node: either the whole subtree under
/// `slot` or just the node's own point.
struct WspdNode {
  std::size_t slot = 0;
  bool self_only = false;

  friend bool operator==(const WspdNode&, const WspdNode&) = default;
};

struct WspdPair {
  Index rep_a = 0;
  Index rep_b = 0;
  WspdNode node_a;
  WspdNode node_b;
  double length = 0.0;  // d(rep_a, rep_b)
};

/// Well-separated pair decomposition over a static net tree of S.
class Wspd {
 public:
  /// Every unordered pair of distinct points lies in some A x B with
  /// max(diam A, diam B) <= d(A, B) / separation.
  static Wspd build(const FiniteMetric& S, double separation);

  const std::vector<WspdPair>& pairs() const { return pairs_; }
  double separation() const { return separation_; }
  const NetTree& tree() const { return tree_; }

  /// Point indices of a node's subset, ascending.
  std::vector<Index> points(const WspdNode& node) const;

 private:
  NetTree tree_;
  std::vector<WspdPair> pairs_;
  double separation_ = 1.0;
};

/// Pair lengths of a WSPD with separation 3/eps, deduplicated within the
/// shared tolerance and ascending. Every pairwise distance d satisfies
/// l/(1+eps) <= d <= (1+eps) l for some returned l.
std::vector<double> candidate_lengths(const FiniteMetric& Y, double eps);

}  // namespace distmatch
