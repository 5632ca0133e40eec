#include "distmatch/wspd.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "distmatch/tolerance.hpp"

namespace distmatch {

namespace {

double radius_of(const NetTree& tree, const WspdNode& n) {
  return n.self_only ? 0.0 : tree.node(n.slot).max_dist;
}

Index center_of(const NetTree& tree, const WspdNode& n) { return tree.node(n.slot).id; }

// The node's own point followed by each child subtree.
void parts_of(const NetTree& tree, const WspdNode& n, std::vector<WspdNode>& out) {
  out.clear();
  out.push_back({n.slot, true});
  for (std::size_t c : tree.node(n.slot).children) out.push_back({c, false});
}

}  // namespace

Wspd Wspd::build(const FiniteMetric& S, double separation) {
  if (S.size() < 2) throw std::invalid_argument("build_wspd: need at least two points");
  if (!(separation > 0.0)) throw std::invalid_argument("build_wspd: separation must be positive");
  Wspd w;
  w.separation_ = separation;
  auto dist = [&S](NetTree::Id a, NetTree::Id b) { return S(a, b); };
  for (Index i = 0; i < S.size(); ++i) w.tree_.insert(i, dist);
  const NetTree& tree = w.tree_;

  std::vector<std::pair<WspdNode, WspdNode>> stack;
  std::vector<WspdNode> parts;
  for (std::size_t u = 0; u < tree.node_count(); ++u) {
    if (tree.node(u).children.empty()) continue;
    parts_of(tree, {u, false}, parts);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) stack.emplace_back(parts[i], parts[j]);
    }
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      const double ra = radius_of(tree, a);
      const double rb = radius_of(tree, b);
      const Index ca = center_of(tree, a);
      const Index cb = center_of(tree, b);
      const double d = S(ca, cb);
      if (2.0 * std::max(ra, rb) * separation <= d - ra - rb) {
        w.pairs_.push_back({ca, cb, a, b, d});
        continue;
      }
      // Not separated, so at least one side has positive radius.
      const bool split_a = ra >= rb;
      std::vector<WspdNode> sub;
      parts_of(tree, split_a ? a : b, sub);
      for (const WspdNode& p : sub) {
        if (split_a) {
          stack.emplace_back(p, b);
        } else {
          stack.emplace_back(a, p);
        }
      }
    }
  }
  return w;
}

std::vector<Index> Wspd::points(const WspdNode& node) const {
  if (node.self_only) return {tree_.node(node.slot).id};
  return tree_.subtree_items(node.slot);
}

std::vector<double> candidate_lengths(const FiniteMetric& Y, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("candidate_lengths: eps must be in (0, 1]");
  const Wspd w = Wspd::build(Y, 3.0 / eps);
  std::vector<double> lengths;
  lengths.reserve(w.pairs().size());
  for (const WspdPair& p : w.pairs()) lengths.push_back(p.length);
  std::sort(lengths.begin(), lengths.end());
  std::vector<double> out;
  for (double l : lengths) {
    if (out.empty() || !approx_leq(l, out.back())) out.push_back(l);
  }
  return out;
}

}  // namespace distmatch
