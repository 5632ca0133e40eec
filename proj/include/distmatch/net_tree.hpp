#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "distmatch/scale.hpp"
#include "distmatch/tolerance.hpp"

namespace distmatch {

// Dynamic hierarchy of nested nets over an abstract point set.
//
// Items are dense non-negative ids. Every node is an item; a node at level L
// keeps children within 2^L of itself, and records the exact maximum distance
// to any item in its subtree, which is what the queries prune on. Deleted
// items stay in the hierarchy as routing nodes and are skipped in results;
// subtrees without active items are never entered. Re-inserting a deleted id
// reactivates its node.
//
// The distance between items is not stored: every mutating call takes a
// callable `dist(a, b)` and every query a callable `dq(id)` giving the
// distance from the query to an item. Callers must pass consistent metrics.
class NetTree {
 public:
  using Id = std::size_t;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    Id id = 0;
    int level = 0;
    double max_dist = 0.0;  // max distance from this node to any item below it
    std::size_t parent = npos;
    std::size_t active_below = 0;  // active items in the subtree, self included
    bool active = false;
    std::vector<std::size_t> children;
  };

  std::size_t size() const { return active_count_; }
  bool empty() const { return active_count_ == 0; }

  bool contains(Id id) const {
    return id < slot_.size() && slot_[id] != npos && nodes_[slot_[id]].active;
  }

  template <class Dist>
  void insert(Id id, Dist&& dist) {
    if (contains(id)) throw std::logic_error("NetTree: item already present");
    if (id < slot_.size() && slot_[id] != npos) {
      const std::size_t s = slot_[id];
      nodes_[s].active = true;
      for (std::size_t u = s; u != npos; u = nodes_[u].parent) ++nodes_[u].active_below;
      ++active_count_;
      return;
    }
    if (id >= slot_.size()) slot_.resize(id + 1, npos);

    if (root_ == npos) {
      root_ = add_node(id, 0, npos);
      root_unset_level_ = true;
      return;
    }

    const double d_root = dist(nodes_[root_].id, id);
    if (root_unset_level_) {
      nodes_[root_].level = d_root > 0.0 ? scale_for(d_root).exponent : 0;
      root_unset_level_ = false;
    } else if (d_root > cover_radius(root_)) {
      nodes_[root_].level = scale_for(d_root).exponent;
    }

    std::size_t p = root_;
    double dp = d_root;
    for (;;) {
      Node& pn = nodes_[p];
      pn.max_dist = std::max(pn.max_dist, dp);
      ++pn.active_below;
      std::size_t next = npos;
      double d_next = 0.0;
      for (std::size_t c : pn.children) {
        const double dc = dist(nodes_[c].id, id);
        if (dc <= cover_radius(c)) {
          next = c;
          d_next = dc;
          break;
        }
      }
      if (next == npos) break;
      p = next;
      dp = d_next;
    }
    const std::size_t s = add_node(id, nodes_[p].level - 1, p);
    nodes_[p].children.push_back(s);
    // add_node counted the new item in its own node only; the path was
    // already incremented above.
  }

  void erase(Id id) {
    if (!contains(id)) throw std::logic_error("NetTree: item not present");
    const std::size_t s = slot_[id];
    nodes_[s].active = false;
    for (std::size_t u = s; u != npos; u = nodes_[u].parent) --nodes_[u].active_below;
    --active_count_;
  }

  /// An active item whose distance to the query is at most `ratio` times the
  /// nearest active distance (ratio >= 1; ratio 1 gives an exact nearest).
  template <class QueryDist>
  std::optional<std::pair<Id, double>> nearest(QueryDist&& dq, double ratio = 1.0) const {
    if (active_count_ == 0) return std::nullopt;
    struct Entry {
      double lower;
      double d;
      std::size_t node;
      bool operator>(const Entry& o) const { return lower > o.lower; }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    const double d0 = dq(nodes_[root_].id);
    frontier.push({std::max(0.0, d0 - nodes_[root_].max_dist), d0, root_});
    Id best_id = 0;
    double best = std::numeric_limits<double>::infinity();
    while (!frontier.empty()) {
      const Entry e = frontier.top();
      frontier.pop();
      if (e.lower * ratio >= best) break;
      const Node& n = nodes_[e.node];
      if (n.active && (e.d < best || (e.d == best && n.id < best_id))) {
        best = e.d;
        best_id = n.id;
      }
      for (std::size_t c : n.children) {
        const Node& cn = nodes_[c];
        if (cn.active_below == 0) continue;
        const double dc = dq(cn.id);
        const double lower = std::max(0.0, dc - cn.max_dist);
        if (lower * ratio < best) frontier.push({lower, dc, c});
      }
    }
    return std::make_pair(best_id, best);
  }

  /// All active items within `radius` of the query (inclusive, up to the
  /// shared tolerance), in ascending id order.
  template <class QueryDist>
  std::vector<Id> within(QueryDist&& dq, double radius) const {
    std::vector<Id> out;
    if (active_count_ == 0) return out;
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      const Node& n = nodes_[u];
      const double d = dq(n.id);
      if (!within_radius(d - n.max_dist, radius)) continue;
      if (n.active && within_radius(d, radius)) out.push_back(n.id);
      for (std::size_t c : n.children) {
        if (nodes_[c].active_below > 0) stack.push_back(c);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// True iff some active item is at distance strictly less than `radius`.
  template <class QueryDist>
  bool any_closer_than(QueryDist&& dq, double radius) const {
    if (active_count_ == 0) return false;
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      const Node& n = nodes_[u];
      const double d = dq(n.id);
      if (d - n.max_dist >= radius) continue;
      if (n.active && d < radius) return true;
      for (std::size_t c : n.children) {
        if (nodes_[c].active_below > 0) stack.push_back(c);
      }
    }
    return false;
  }

  // Structural access, used by the WSPD construction and by tests.
  std::size_t root() const { return root_; }
  const Node& node(std::size_t s) const { return nodes_[s]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t slot_of(Id id) const { return id < slot_.size() ? slot_[id] : npos; }

  /// Every item (active or not) in the subtree of node s.
  std::vector<Id> subtree_items(std::size_t s) const {
    std::vector<Id> out;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      out.push_back(nodes_[u].id);
      for (std::size_t c : nodes_[u].children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  double cover_radius(std::size_t s) const { return std::ldexp(1.0, nodes_[s].level); }

  std::size_t add_node(Id id, int level, std::size_t parent) {
    Node n;
    n.id = id;
    n.level = level;
    n.parent = parent;
    n.active = true;
    n.active_below = 1;
    nodes_.push_back(std::move(n));
    slot_[id] = nodes_.size() - 1;
    ++active_count_;
    return nodes_.size() - 1;
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> slot_;
  std::size_t root_ = npos;
  bool root_unset_level_ = false;
  std::size_t active_count_ = 0;
};

}  // namespace distmatch
