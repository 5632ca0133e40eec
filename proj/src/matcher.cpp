#include "distmatch/matcher.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "distmatch/tolerance.hpp"
#include "parallel.hpp"

namespace distmatch {

// ---------------------------------------------------------------------------
// Splitting

std::size_t SplitTree::depth() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::size_t d = 0;
    for (int p = nodes[i].parent; p >= 0; p = nodes[p].parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

std::pair<std::vector<Index>, std::vector<Index>> split_pattern(const FiniteMetric& X,
                                                                std::span<const Index> subset) {
  const std::size_t m = subset.size();
  if (m < 2) throw std::invalid_argument("split_pattern: need at least two points");
  std::vector<std::tuple<double, Index, Index>> edges;
  edges.reserve(m * (m - 1) / 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Index u = std::min(subset[a], subset[b]);
      const Index v = std::max(subset[a], subset[b]);
      edges.emplace_back(X(u, v), u, v);
    }
  }
  std::sort(edges.begin(), edges.end());

  // Union-find over positions in `subset`.
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto pos = [&](Index x) {
    return static_cast<std::size_t>(std::find(subset.begin(), subset.end(), x) - subset.begin());
  };
  std::size_t components = m;
  for (const auto& [d, u, v] : edges) {
    if (components == 2) break;
    const std::size_t a = find(pos(u));
    const std::size_t b = find(pos(v));
    if (a == b) continue;
    parent[b] = a;
    --components;
  }
  const std::size_t root_p = find(0);
  std::vector<Index> P;
  std::vector<Index> Q;
  for (std::size_t a = 0; a < m; ++a) (find(a) == root_p ? P : Q).push_back(subset[a]);
  std::sort(P.begin(), P.end());
  std::sort(Q.begin(), Q.end());
  return {P, Q};
}

SplitTree build_split_tree(const FiniteMetric& X, double eps, double rho) {
  if (X.size() == 0) throw std::invalid_argument("build_split_tree: empty pattern");
  SplitTree tree;
  SplitNode root;
  root.subset.resize(X.size());
  std::iota(root.subset.begin(), root.subset.end(), Index{0});
  root.beta = eps;
  if (X.size() >= 2) root.scale = scale_for(rho * diam(X));
  tree.nodes.push_back(std::move(root));
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].subset.size() < 2) continue;
    auto [P, Q] = split_pattern(X, tree.nodes[i].subset);
    const double child_beta =
        tree.nodes[i].beta / (8.0 * static_cast<double>(tree.nodes[i].subset.size()) - 8.0);
    const Scale parent_scale = *tree.nodes[i].scale;
    for (auto* part : {&P, &Q}) {
      SplitNode c;
      c.subset = std::move(*part);
      c.beta = child_beta;
      c.parent = static_cast<int>(i);
      c.scale = c.subset.size() >= 2 ? scale_for(rho * diam(X, c.subset)) : parent_scale;
      tree.nodes.push_back(std::move(c));
    }
    tree.nodes[i].left = static_cast<int>(tree.nodes.size() - 2);
    tree.nodes[i].right = static_cast<int>(tree.nodes.size() - 1);
  }
  return tree;
}

// ---------------------------------------------------------------------------
// MatchingSet

Matching MatchingSet::matching(std::size_t i) const {
  auto s = at(i);
  return Matching(std::vector<Index>(s.begin(), s.end()));
}

double MatchingSet::distance_to(std::span<const Index> cand, std::size_t i,
                                const FiniteMetric& Y) const {
  const Index* row = data_.data() + i * width_;
  double d = 0.0;
  for (std::size_t t = 0; t < width_; ++t) d = std::max(d, Y(row[t], cand[t]));
  return d;
}

bool MatchingSet::has_closer_than(std::span<const Index> cand, double radius,
                                  const FiniteMetric& Y) const {
  if (!indexed_) {
    for (std::size_t i = 0, n = size(); i < n; ++i) {
      if (distance_to(cand, i, Y) < radius) return true;
    }
    return false;
  }
  return tree_.any_closer_than([&](NetTree::Id i) { return distance_to(cand, i, Y); }, radius);
}

void MatchingSet::push(std::span<const Index> cand, const FiniteMetric& Y) {
  if (cand.size() != width_) throw std::invalid_argument("MatchingSet: width mismatch");
  data_.insert(data_.end(), cand.begin(), cand.end());
  auto dist = [this, &Y](NetTree::Id a, NetTree::Id b) { return distance_to(at(a), b, Y); };
  if (indexed_) {
    tree_.insert(size() - 1, dist);
  } else if (size() >= kIndexThreshold) {
    for (std::size_t i = 0; i < size(); ++i) tree_.insert(i, dist);
    indexed_ = true;
  }
}

bool MatchingSet::try_insert(std::span<const Index> cand, double radius, const FiniteMetric& Y) {
  if (has_closer_than(cand, radius, Y)) return false;
  push(cand, Y);
  return true;
}

std::size_t SetFamily::total() const {
  std::size_t n = 0;
  for (const auto& s : per_center) n += s.size();
  return n;
}

std::size_t SetFamily::max_set_size() const {
  std::size_t n = 0;
  for (const auto& s : per_center) n = std::max(n, s.size());
  return n;
}

std::vector<Matching> SetFamily::all() const {
  std::vector<Matching> out;
  for (const auto& s : per_center) {
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.matching(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Base case, lift, combine

namespace {

double separation(double beta, Scale r, double rho) { return beta * r.value() / (2.0 * rho * rho); }

}  // namespace

SetFamily base_singleton(Index x, double beta, double rho, std::shared_ptr<const NetLayer> layer,
                         const FiniteMetric& Y) {
  if (!layer) throw std::invalid_argument("base_singleton: missing layer");
  SetFamily fam;
  fam.domain = {x};
  fam.beta = beta;
  fam.per_center.assign(layer->size(), MatchingSet(1));
  const NetLayer net = build_r_net(Y, separation(beta, layer->scale, rho));
  for (Index y : net.centers) {
    const auto slot = layer->slot_of(layer->cover[y]);
    const Index one[1] = {y};
    fam.per_center[static_cast<std::size_t>(slot)].push(one, Y);
  }
  fam.layer = std::move(layer);
  return fam;
}

SetFamily lift(const SetFamily& fine, std::shared_ptr<const NetLayer> coarse,
               std::span<const Index> anc, double rho, const FiniteMetric& Y, unsigned threads) {
  if (!coarse || !fine.layer) throw std::invalid_argument("lift: missing layer");
  if (coarse->scale < fine.layer->scale.doubled()) {
    throw std::invalid_argument("lift: target scale must be at least twice the source scale");
  }
  if (anc.size() != fine.layer->size()) throw std::invalid_argument("lift: ancestor map size");
  std::vector<std::vector<std::size_t>> groups(coarse->size());
  for (std::size_t i = 0; i < fine.per_center.size(); ++i) {
    if (fine.per_center[i].empty()) continue;
    const auto slot = coarse->slot_of(anc[i]);
    if (slot == NetLayer::kNotCenter) throw std::invalid_argument("lift: ancestor is not a coarse center");
    groups[static_cast<std::size_t>(slot)].push_back(i);
  }
  const std::size_t width = fine.domain.size();
  const double sep = separation(fine.beta, coarse->scale, rho);
  SetFamily out;
  out.domain = fine.domain;
  out.beta = fine.beta;
  out.per_center.assign(coarse->size(), MatchingSet(width));
  detail::parallel_for(coarse->size(), threads, [&](std::size_t c) {
    MatchingSet& kept = out.per_center[c];
    for (std::size_t i : groups[c]) {
      const MatchingSet& src = fine.per_center[i];
      for (std::size_t j = 0; j < src.size(); ++j) kept.try_insert(src.at(j), sep, Y);
    }
  });
  out.layer = std::move(coarse);
  return out;
}

SetFamily combine(const SetFamily& P, const SetFamily& Q, double eps, double rho,
                  const FiniteMetric& X, const FiniteMetric& Y, unsigned threads, bool first_only,
                  std::size_t* candidates) {
  if (!P.layer || !Q.layer || P.layer->scale != Q.layer->scale) {
    throw std::invalid_argument("combine: families must share a layer");
  }
  const NetLayer& layer = *P.layer;
  if (layer.adjacency.size() != layer.size()) {
    throw std::invalid_argument("combine: layer has no horizontal edges");
  }
  SetFamily out;
  std::merge(P.domain.begin(), P.domain.end(), Q.domain.begin(), Q.domain.end(),
             std::back_inserter(out.domain));
  out.beta = eps;
  out.layer = P.layer;
  const std::size_t width = out.domain.size();
  out.per_center.assign(layer.size(), MatchingSet(width));

  auto position = [&](Index x) {
    return static_cast<std::size_t>(std::lower_bound(out.domain.begin(), out.domain.end(), x) -
                                     out.domain.begin());
  };
  std::vector<std::size_t> pos_p;
  std::vector<std::size_t> pos_q;
  for (Index x : P.domain) pos_p.push_back(position(x));
  for (Index x : Q.domain) pos_q.push_back(position(x));
  struct Cross {
    std::size_t tp, tq;
    double dx;
  };
  std::vector<Cross> cross;
  for (std::size_t a = 0; a < P.domain.size(); ++a) {
    for (std::size_t b = 0; b < Q.domain.size(); ++b) cross.push_back({a, b, X(P.domain[a], Q.domain[b])});
  }
  const double bound = (1.0 + eps) * rho;
  const double r = layer.radius();
  const double ball = 3.0 * r;
  const double sep = separation(eps, layer.scale, rho);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first_hit{kNone};
  std::atomic<std::size_t> examined{0};

  auto gather = [&](const SetFamily& fam, std::size_t s, Index y, std::vector<const Index*>& out_list) {
    out_list.clear();
    const std::size_t w = fam.domain.size();
    for (Index z : layer.adjacency[s]) {
      const MatchingSet& set = fam.per_center[static_cast<std::size_t>(layer.slot_of(z))];
      for (std::size_t i = 0; i < set.size(); ++i) {
        auto m = set.at(i);
        bool inside = true;
        for (std::size_t t = 0; t < w && inside; ++t) inside = within_radius(Y(y, m[t]), ball);
        if (inside) out_list.push_back(m.data());
      }
    }
  };

  detail::parallel_for(layer.size(), threads, [&](std::size_t s) {
    if (first_only && s > first_hit.load()) return;
    const Index y = layer.centers[s];
    std::vector<const Index*> lp;
    std::vector<const Index*> lq;
    gather(P, s, y, lp);
    if (lp.empty()) return;
    gather(Q, s, y, lq);
    if (lq.empty()) return;
    MatchingSet& kept = out.per_center[s];
    std::vector<Index> merged(width);
    std::size_t local = 0;
    for (const Index* sp : lp) {
      for (const Index* sq : lq) {
        ++local;
        bool ok = true;
        for (std::size_t a = 0; a < pos_p.size() && ok; ++a) {
          for (std::size_t b = 0; b < pos_q.size(); ++b) {
            if (sp[a] == sq[b]) {
              ok = false;
              break;
            }
          }
        }
        for (std::size_t c = 0; c < cross.size() && ok; ++c) {
          const double dy = Y(sp[cross[c].tp], sq[cross[c].tq]);
          ok = approx_leq(dy, bound * cross[c].dx) && approx_leq(cross[c].dx, bound * dy);
        }
        if (!ok) continue;
        for (std::size_t a = 0; a < pos_p.size(); ++a) merged[pos_p[a]] = sp[a];
        for (std::size_t b = 0; b < pos_q.size(); ++b) merged[pos_q[b]] = sq[b];
        if (kept.try_insert(merged, sep, Y) && first_only) {
          examined += local;
          std::size_t cur = first_hit.load();
          while (s < cur && !first_hit.compare_exchange_weak(cur, s)) {
          }
          return;
        }
      }
    }
    examined += local;
  });

  if (first_only) {
    const std::size_t hit = first_hit.load();
    for (std::size_t s = 0; s < out.per_center.size(); ++s) {
      if (s != hit) out.per_center[s] = MatchingSet(width);
    }
  }
  if (candidates) *candidates += examined.load();
  return out;
}

// ---------------------------------------------------------------------------
// Driver

namespace {

class Solver {
 public:
  Solver(const FiniteMetric& X, const FiniteMetric& Y, double rho, double eps,
         const SolveOptions& opt)
      : X_(X), Y_(Y), rho_(rho), eps_(eps), opt_(opt) {}

  SolveResult run() {
    SolveResult result;
    tree_ = build_split_tree(X_, eps_, rho_);
    result.stats.root_scale = tree_.nodes[0].scale;
    SetFamily root = family(0, /*is_root=*/true);
    stats_.kept = root.total();
    stats_.root_scale = tree_.nodes[0].scale;
    result.matchings = root.all();
    for (const Matching& m : result.matchings) {
      if (!verify_matching(m, X_, Y_, (1.0 + eps_) * rho_)) {
        throw std::logic_error("solve_distortion: produced a matching outside (1+eps)rho");
      }
    }
    result.stats = stats_;
    return result;
  }

 private:
  std::shared_ptr<const NetLayer> layer(Scale s) {
    auto it = layers_.find(s.exponent);
    if (it != layers_.end()) return it->second;
    auto built = std::make_shared<NetLayer>(build_r_net(Y_, s));
    horizontal_edges(*built, Y_);
    ++stats_.layers_built;
    layers_.emplace(s.exponent, built);
    return built;
  }

  const std::vector<Index>& ancestor_map(Scale fine, Scale coarse) {
    const auto key = std::make_pair(fine.exponent, coarse.exponent);
    auto it = anc_.find(key);
    if (it != anc_.end()) return it->second;
    auto [pos, _] = anc_.emplace(key, ancestors(*layer(fine), *layer(coarse), Y_));
    return pos->second;
  }

  void note(const SetFamily& f) { stats_.max_set_size = std::max(stats_.max_set_size, f.max_set_size()); }

  // The node's family at its parent's scale (leaves) or own scale (inner nodes).
  SetFamily child_family(int c, Scale target) {
    const SplitNode& node = tree_.nodes[c];
    if (node.is_leaf()) {
      SetFamily f = base_singleton(node.subset[0], node.beta, rho_, layer(target), Y_);
      note(f);
      return f;
    }
    SetFamily f = family(c, false);
    if (f.layer->scale < target) {
      const auto& anc = ancestor_map(f.layer->scale, target);
      f = lift(f, layer(target), anc, rho_, Y_, opt_.threads);
      note(f);
    }
    return f;
  }

  SetFamily family(int id, bool is_root) {
    const SplitNode& node = tree_.nodes[id];
    const Scale r = *node.scale;
    SetFamily a = child_family(node.left, r);
    SetFamily b = child_family(node.right, r);
    SetFamily f = combine(a, b, node.beta, rho_, X_, Y_, opt_.threads, is_root && !opt_.want_all,
                          &stats_.candidates);
    note(f);
    return f;
  }

  const FiniteMetric& X_;
  const FiniteMetric& Y_;
  double rho_;
  double eps_;
  SolveOptions opt_;
  SplitTree tree_;
  SolveStats stats_;
  std::map<int, std::shared_ptr<const NetLayer>> layers_;
  std::map<std::pair<int, int>, std::vector<Index>> anc_;
};

}  // namespace

SolveResult solve_distortion(const FiniteMetric& X, const FiniteMetric& Y, double rho, double eps,
                             const SolveOptions& options) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("solve_distortion: rho must be >= 1");
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("solve_distortion: eps must be in (0, 1]");
  if (X.size() == 0) throw std::invalid_argument("solve_distortion: empty pattern");
  if (X.size() > Y.size()) throw std::invalid_argument("solve_distortion: pattern larger than space");

  SolveResult result;
  if (X.size() == 1) {
    if (options.want_all) {
      for (Index y = 0; y < Y.size(); ++y) result.matchings.push_back(Matching{y});
    } else {
      result.matchings.push_back(Matching{0});
    }
    result.stats.kept = result.matchings.size();
    return result;
  }

  // No pair of Y within rho diam(X) leaves no image for any pattern pair.
  const NetLayer coarse = build_r_net(Y, rho * diam(X));
  if (coarse.size() == Y.size()) {
    result.stats.early_exit = true;
    result.stats.root_scale = scale_for(rho * diam(X));
    return result;
  }
  return Solver(X, Y, rho, eps, options).run();
}

}  // namespace distmatch
