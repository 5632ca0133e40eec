#include "distmatch/nets.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "distmatch/ann.hpp"
#include "distmatch/tolerance.hpp"

namespace distmatch {

void NetLayer::index_slots(std::size_t n) {
  slot_.assign(n, kNotCenter);
  for (std::size_t s = 0; s < centers.size(); ++s) {
    slot_[centers[s]] = static_cast<std::int64_t>(s);
  }
}

NetLayer build_r_net(const FiniteMetric& Y, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("build_r_net: radius must be positive");
  NetLayer layer;
  layer.scale = scale_for(r);
  layer.cover.resize(Y.size());
  AnnIndex index(Y);
  for (Index y = 0; y < Y.size(); ++y) {
    if (!index.empty()) {
      std::vector<Index> hits = index.range_query(y, r);
      if (!hits.empty()) {
        layer.cover[y] = hits.front();
        continue;
      }
    }
    index.insert(y);
    layer.centers.push_back(y);
    layer.cover[y] = y;
  }
  layer.index_slots(Y.size());
  return layer;
}

NetLayer build_r_net(const FiniteMetric& Y, Scale s) {
  NetLayer layer = build_r_net(Y, s.value());
  layer.scale = s;
  return layer;
}

void horizontal_edges(NetLayer& layer, const FiniteMetric& Y) {
  AnnIndex index(Y);
  for (Index c : layer.centers) index.insert(c);
  const double reach = 6.0 * layer.radius();
  layer.adjacency.clear();
  layer.adjacency.reserve(layer.centers.size());
  for (Index c : layer.centers) layer.adjacency.push_back(index.range_query(c, reach));
}

std::vector<Index> ancestors(const NetLayer& fine, const NetLayer& coarse, const FiniteMetric& Y) {
  AnnIndex index(Y);
  for (Index c : coarse.centers) index.insert(c);
  std::vector<Index> out;
  out.reserve(fine.centers.size());
  for (Index y : fine.centers) {
    std::vector<Index> hits = index.range_query(y, coarse.radius());
    if (hits.empty()) {
      throw std::logic_error("ancestors: no coarse center within the coarse radius of point " +
                             std::to_string(y));
    }
    out.push_back(hits.front());
  }
  return out;
}

// ---------------------------------------------------------------------------
// NavigatingNet

const NavigatingNet::Level& NavigatingNet::level(Scale s) const {
  auto it = levels_.find(s.exponent);
  if (it == levels_.end()) throw std::out_of_range("NavigatingNet: no level at this scale");
  return it->second;
}

NavigatingNet::Level& NavigatingNet::level_mut(Scale s) { return levels_.at(s.exponent); }

NavigatingNet NavigatingNet::build(const FiniteMetric& Y) {
  if (Y.size() == 0) throw std::invalid_argument("NavigatingNet: empty metric");
  NavigatingNet net(Y);
  net.root_ = 0;
  double far = 0.0;
  for (Index y = 1; y < Y.size(); ++y) far = std::max(far, Y(0, y));
  net.r_max_ = far > 0.0 ? scale_for(far) : Scale{0};
  net.r_min_ = net.r_max_;
  Node root;
  root.parent = net.root_;
  root.neighbors = {net.root_};
  net.levels_[net.r_max_.exponent][net.root_] = root;
  for (Index y = 1; y < Y.size(); ++y) net.insert(y);
  return net;
}

std::map<int, std::vector<Index>> NavigatingNet::near_sets(Index y) const {
  const FiniteMetric& Y = *Y_;
  std::map<int, std::vector<Index>> near;
  std::vector<Index> current;
  if (within_radius(Y(y, root_), 6.0 * r_max_.value())) current.push_back(root_);
  near[r_max_.exponent] = current;
  for (Scale s = r_max_.halved(); s >= r_min_; s = s.halved()) {
    const Level& up = level(s.doubled());
    std::vector<Index> next;
    for (Index z : current) {
      for (Index c : up.at(z).children) {
        if (within_radius(Y(y, c), 6.0 * s.value())) next.push_back(c);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    near[s.exponent] = next;
    current = std::move(next);
  }
  return near;
}

void NavigatingNet::insert(Index y) {
  const FiniteMetric& Y = *Y_;
  auto near = near_sets(y);

  // Closest inserted point; every inserted point is in the bottom level.
  const std::vector<Index>& bottom = near[r_min_.exponent];
  std::optional<Index> closest;
  for (Index z : bottom) {
    if (!closest || Y(y, z) < Y(y, *closest)) closest = z;
  }
  // The top level only ever holds the root, so the first insertion always
  // opens a level below it.
  const bool only_top = r_min_ == r_max_;
  if (closest && (Y(y, *closest) < r_min_.value() || only_top)) {
    Scale target = scale_floor(Y(y, *closest));
    if (target >= r_min_) target = r_min_.halved();
    for (Scale s = r_min_.halved(); s >= target; s = s.halved()) {
      Level& up = level_mut(s.doubled());
      Level fresh;
      for (auto& [z, node] : up) {
        Node copy;
        copy.parent = z;
        for (Index w : node.neighbors) {
          if (within_radius(Y(z, w), 6.0 * s.value())) copy.neighbors.push_back(w);
        }
        node.children.push_back(z);
        fresh.emplace(z, std::move(copy));
      }
      levels_[s.exponent] = std::move(fresh);
    }
    r_min_ = target;
    near = near_sets(y);
  }

  bool inserted_above = false;  // y present one level up
  for (Scale s = r_max_.halved(); s >= r_min_; s = s.halved()) {
    const std::vector<Index>& here = near[s.exponent];
    bool separated = true;
    for (Index z : here) {
      if (Y(y, z) < s.value()) {
        separated = false;
        break;
      }
    }
    if (!separated) {
      inserted_above = false;
      continue;
    }
    Node node;
    node.neighbors = here;
    node.neighbors.push_back(y);
    std::sort(node.neighbors.begin(), node.neighbors.end());
    Level& lv = level_mut(s);
    for (Index z : here) {
      auto& nb = lv.at(z).neighbors;
      nb.insert(std::upper_bound(nb.begin(), nb.end(), y), y);
    }
    Level& up = level_mut(s.doubled());
    if (inserted_above) {
      node.parent = y;
    } else {
      const std::vector<Index>& cand = near[s.doubled().exponent];
      Index best = cand.front();
      for (Index z : cand) {
        if (Y(y, z) < Y(y, best)) best = z;
      }
      node.parent = best;
    }
    up.at(node.parent).children.push_back(y);
    lv.emplace(y, std::move(node));
    inserted_above = true;
  }
}

NetLayer NavigatingNet::layer(Scale s) const {
  const Level& lv = level(s);
  const FiniteMetric& Y = *Y_;
  NetLayer out;
  out.scale = s;
  for (const auto& [y, node] : lv) {
    out.centers.push_back(y);
    out.adjacency.push_back(node.neighbors);
  }
  out.index_slots(Y.size());
  out.cover.resize(Y.size());
  for (Index p = 0; p < Y.size(); ++p) {
    if (out.slot_of(p) != NetLayer::kNotCenter) {
      out.cover[p] = p;
      continue;
    }
    const auto near = near_sets(p);
    const auto& cand = near.at(s.exponent);
    auto it = std::find_if(cand.begin(), cand.end(),
                           [&](Index z) { return within_radius(Y(p, z), s.value()); });
    if (it == cand.end()) throw std::logic_error("NavigatingNet: layer does not cover a point");
    out.cover[p] = *it;
  }
  return out;
}

Index NavigatingNet::ancestor(Scale s, Index y, Scale up) const {
  if (up < s) throw std::invalid_argument("ancestor: target scale below node scale");
  if (!level(s).contains(y)) throw std::invalid_argument("ancestor: point not in this level");
  Index cur = y;
  for (Scale t = s; t < up && t < r_max_; t = t.doubled()) cur = level(t).at(cur).parent;
  return cur;
}

std::size_t NavigatingNet::max_degree() const {
  std::size_t best = 0;
  for (const auto& [e, lv] : levels_) {
    for (const auto& [y, node] : lv) {
      best = std::max(best, node.neighbors.size() - 1 + node.children.size());
    }
  }
  return best;
}

}  // namespace distmatch
