#include "distmatch/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "distmatch/tolerance.hpp"

namespace distmatch {

Graph::Graph(std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> edges) : m_(m) {
  adj_.assign(m * m, false);
  for (auto [u, v] : edges) {
    if (u >= m || v >= m) throw std::invalid_argument("Graph: vertex index out of range");
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    adj_[u * m + v] = adj_[v * m + u] = true;
  }
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      if (adj_[u * m + v]) edges_.emplace_back(u, v);
    }
  }
}

Graph Graph::random(std::size_t m, double p, std::mt19937_64& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      // 53 random bits as a uniform double in [0, 1).
      const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (x < p) edges.emplace_back(u, v);
    }
  }
  return Graph(m, std::move(edges));
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  if (u >= m_ || v >= m_) throw std::out_of_range("Graph::adjacent: vertex index out of range");
  return adj_[u * m_ + v];
}

bool Graph::is_clique(const std::vector<std::size_t>& vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!adjacent(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

Graph Graph::with_clique(const std::vector<std::size_t>& vertices) const {
  auto edges = edges_;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] != vertices[b]) edges.emplace_back(vertices[a], vertices[b]);
    }
  }
  return Graph(m_, std::move(edges));
}

std::size_t CliqueInstance::flat_index(std::size_t ring, std::size_t vertex) const {
  if (ring >= k || vertex >= m()) throw std::out_of_range("flat_index: ring or vertex out of range");
  return ring * m() + vertex;
}

std::pair<std::size_t, std::size_t> CliqueInstance::decode(std::size_t flat) const {
  if (flat >= ring_points()) throw std::out_of_range("decode: not a ring point");
  return {flat / m(), flat % m()};
}

namespace {

void check_args(const Graph& G, std::size_t k, double rho) {
  if (G.m() < kMinGadgetVertices) throw std::invalid_argument("gadget: graph needs at least 24 vertices");
  if (k < 1) throw std::invalid_argument("gadget: k must be at least 1");
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("gadget: rho must be >= 1");
}

}  // namespace

CliqueInstance gen_clique_instance(const Graph& G, std::size_t k, double rho) {
  check_args(G, k, rho);
  CliqueInstance inst;
  inst.graph = G;
  inst.k = k;
  inst.rho = rho;
  const std::size_t m = G.m();
  const std::size_t n = k * m;
  const auto mm = static_cast<std::int64_t>(m);
  inst.numerators.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = a / m;
    const std::size_t j = a % m;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i2 = b / m;
      const std::size_t j2 = b % m;
      std::int64_t num;
      if (i == i2) {
        const auto gap = static_cast<std::int64_t>(j > j2 ? j - j2 : j2 - j);
        num = std::min(gap, mm - gap);
      } else {
        // Rings are 1-based in the exponent: ring index i has exponent i+1.
        const std::int64_t power = std::int64_t{1} << (std::max(i, i2) + 1);
        num = power * mm - (j != j2 && G.adjacent(j, j2) ? 0 : 1);
      }
      inst.numerators[a * n + b] = num;
    }
  }
  std::vector<double> table(n * n);
  for (std::size_t t = 0; t < n * n; ++t) {
    table[t] = static_cast<double>(inst.numerators[t]) / static_cast<double>(m);
  }
  inst.Y = FiniteMetric::from_flat_matrix(n, std::move(table), /*validate=*/false);

  std::vector<double> xt(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t i2 = 0; i2 < k; ++i2) {
      if (i != i2) xt[i * k + i2] = std::ldexp(1.0, static_cast<int>(std::max(i, i2) + 1)) * rho;
    }
  }
  inst.X = FiniteMetric::from_flat_matrix(k, std::move(xt), /*validate=*/false);
  return inst;
}

CliqueInstance gen_min_distortion_instance(const Graph& G, std::size_t k, double rho) {
  CliqueInstance inst = gen_clique_instance(G, k, rho);
  const double lambda = 5.0 * static_cast<double>(G.m()) * rho * rho * std::ldexp(1.0, static_cast<int>(k));
  inst.lambda = lambda;
  auto extend = [lambda](const FiniteMetric& S) {
    const std::size_t n = S.size();
    std::vector<double> t((n + 1) * (n + 1), lambda);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) t[a * (n + 1) + b] = S(a, b);
    }
    t[n * (n + 1) + n] = 0.0;
    return FiniteMetric::from_flat_matrix(n + 1, std::move(t), /*validate=*/false);
  };
  inst.X = extend(inst.X);
  inst.Y = extend(inst.Y);
  return inst;
}

std::vector<std::size_t> matching_to_clique(const Matching& sigma, const CliqueInstance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    if (inst.is_lambda_point(sigma[t])) continue;
    out.push_back(inst.decode(sigma[t]).second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Matching clique_to_matching(const std::vector<std::size_t>& vertices, const CliqueInstance& inst) {
  if (vertices.size() != inst.k) throw std::invalid_argument("clique_to_matching: need k vertices");
  std::vector<Index> targets;
  for (std::size_t i = 0; i < inst.k; ++i) targets.push_back(inst.flat_index(i, vertices[i]));
  if (inst.lambda) targets.push_back(inst.ring_points());
  return Matching(std::move(targets));
}

std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> exact_triangle_violation(
    const CliqueInstance& inst) {
  const std::size_t n = inst.ring_points();
  const auto& d = inst.numerators;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        if (d[i * n + j] > d[i * n + l] + d[l * n + j]) return std::make_tuple(i, j, l);
      }
    }
  }
  return std::nullopt;
}

namespace {

using Words = std::vector<std::uint64_t>;

bool coverable(const Words& target, const std::vector<Words>& half, std::size_t balls) {
  std::size_t first = 0;
  bool any = false;
  for (std::size_t w = 0; w < target.size(); ++w) {
    if (target[w]) {
      first = w * 64 + static_cast<std::size_t>(std::countr_zero(target[w]));
      any = true;
      break;
    }
  }
  if (!any) return true;
  if (balls == 0) return false;
  Words rest(target.size());
  for (const Words& h : half) {
    if (!((h[first / 64] >> (first % 64)) & 1u)) continue;
    for (std::size_t w = 0; w < target.size(); ++w) rest[w] = target[w] & ~h[w];
    if (coverable(rest, half, balls - 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<CoverFailure> doubling_cover_check(const FiniteMetric& Y, std::size_t balls) {
  const std::size_t n = Y.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<double> radii;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) radii.push_back(Y(a, b));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  auto ball = [&](Index c, double r) {
    Words w(words, 0);
    for (Index q = 0; q < n; ++q) {
      if (within_radius(Y(c, q), r)) w[q / 64] |= std::uint64_t{1} << (q % 64);
    }
    return w;
  };
  for (double r : radii) {
    std::vector<Words> half;
    half.reserve(n);
    for (Index c = 0; c < n; ++c) half.push_back(ball(c, r / 2.0));
    for (Index p = 0; p < n; ++p) {
      if (!coverable(ball(p, r), half, balls)) return CoverFailure{p, r};
    }
  }
  return std::nullopt;
}

}  // namespace distmatch
