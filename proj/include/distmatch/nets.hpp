#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "distmatch/metric.hpp"
#include "distmatch/scale.hpp"

namespace distmatch {

/// An r-net of Y: centers pairwise >= r apart whose radius-r balls cover Y.
struct NetLayer {
  static constexpr std::int64_t kNotCenter = -1;

  Scale scale;
  std::vector<Index> centers;  // ascending point indices
  std::vector<Index> cover;    // per point of Y: a center within r (the smallest such index)
  // Per center (aligned with `centers`): centers within 6r, self included,
  // ascending. Empty until horizontal_edges() has run.
  std::vector<std::vector<Index>> adjacency;

  double radius() const { return scale.value(); }
  std::size_t size() const { return centers.size(); }

  /// Position of point y in `centers`, or kNotCenter.
  std::int64_t slot_of(Index y) const {
    return y < slot_.size() ? slot_[y] : kNotCenter;
  }
  void index_slots(std::size_t n);

 private:
  std::vector<std::int64_t> slot_;
};

/// Greedy r-net over points in ascending index order: a point becomes a center
/// iff no earlier center lies within r. Radius tests use the shared tolerance.
NetLayer build_r_net(const FiniteMetric& Y, double r);
NetLayer build_r_net(const FiniteMetric& Y, Scale s);

/// Fills layer.adjacency with all center pairs at distance <= 6r.
void horizontal_edges(NetLayer& layer, const FiniteMetric& Y);

/// For every center of `fine` (aligned with fine.centers), the smallest-index
/// center of `coarse` within the coarse radius.
std::vector<Index> ancestors(const NetLayer& fine, const NetLayer& coarse, const FiniteMetric& Y);

// Reference hierarchy: r-nets at every scale between r_min and r_max, joined
// by horizontal (<= 6r) and parent edges, built incrementally top-down.
// Construction cost depends on the spread of Y; the solver does not use it.
class NavigatingNet {
 public:
  struct Node {
    Index parent = 0;              // point index of the parent one scale up (self at the top)
    std::vector<Index> children;   // point indices one scale down
    std::vector<Index> neighbors;  // same-scale points within 6r, self included
  };
  using Level = std::map<Index, Node>;

  static NavigatingNet build(const FiniteMetric& Y);

  Scale r_min() const { return r_min_; }
  Scale r_max() const { return r_max_; }
  Index root() const { return root_; }
  std::size_t level_count() const { return static_cast<std::size_t>(r_max_.exponent - r_min_.exponent + 1); }

  /// Members and edges at the given scale; throws outside [r_min, r_max].
  const Level& level(Scale s) const;

  /// The scale's r-net as a NetLayer (centers, cover, adjacency).
  NetLayer layer(Scale s) const;

  /// Ancestor of node (s, y) at the coarser scale `up` following parent links.
  Index ancestor(Scale s, Index y, Scale up) const;

  /// Largest over all nodes of (horizontal neighbours excluding self) + children.
  std::size_t max_degree() const;

 private:
  explicit NavigatingNet(const FiniteMetric& Y) : Y_(&Y) {}
  Level& level_mut(Scale s);
  void insert(Index y);
  // Points of the level at distance <= 6r from y, per scale from r_max down to r_min.
  std::map<int, std::vector<Index>> near_sets(Index y) const;

  const FiniteMetric* Y_;
  Scale r_min_;
  Scale r_max_;
  Index root_ = 0;
  std::map<int, Level> levels_;
};

}  // namespace distmatch
