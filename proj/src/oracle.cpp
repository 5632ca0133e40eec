#include "distmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distmatch/tolerance.hpp"

namespace distmatch {

double injection_count(std::size_t k, std::size_t n) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c *= static_cast<double>(n - i);
  return c;
}

namespace {

void guard_injections(std::size_t k, std::size_t n) {
  if (injection_count(k, n) > kEnumerationGuard) {
    throw GuardExceeded("oracle: more than 1e7 injections to enumerate");
  }
}

// Calls visit(targets) on every injection in lexicographic order until it
// returns false.
template <class Visit>
void for_each_injection(std::size_t k, std::size_t n, Visit&& visit) {
  std::vector<Index> targets(k);
  std::vector<bool> used(n, false);
  bool go = true;
  auto rec = [&](auto&& self, std::size_t t) -> void {
    if (!go) return;
    if (t == k) {
      go = visit(targets);
      return;
    }
    for (Index y = 0; y < n && go; ++y) {
      if (used[y]) continue;
      used[y] = true;
      targets[t] = y;
      self(self, t + 1);
      used[y] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Matching> brute_rho_matchings(const FiniteMetric& X, const FiniteMetric& Y, double rho,
                                          std::size_t limit) {
  if (X.size() > Y.size()) throw std::invalid_argument("brute_rho_matchings: pattern larger than space");
  guard_injections(X.size(), Y.size());
  std::vector<Matching> out;
  for_each_injection(X.size(), Y.size(), [&](const std::vector<Index>& t) {
    Matching m(t);
    if (verify_matching(m, X, Y, rho)) out.push_back(std::move(m));
    return limit == 0 || out.size() < limit;
  });
  return out;
}

std::pair<double, Matching> brute_min_distortion(const FiniteMetric& X, const FiniteMetric& Y) {
  if (X.size() < 2) throw std::invalid_argument("brute_min_distortion: pattern needs two points");
  if (X.size() > Y.size()) throw std::invalid_argument("brute_min_distortion: pattern larger than space");
  guard_injections(X.size(), Y.size());
  double best = std::numeric_limits<double>::infinity();
  Matching arg;
  for_each_injection(X.size(), Y.size(), [&](const std::vector<Index>& t) {
    Matching m(t);
    const double v = distortion(m, X, Y);
    if (v < best) {
      best = v;
      arg = std::move(m);
    }
    return true;
  });
  return {best, arg};
}

std::optional<std::vector<std::size_t>> brute_k_clique(const Graph& G, std::size_t k) {
  const std::size_t m = G.m();
  if (k > m) return std::nullopt;
  double combos = 1.0;
  for (std::size_t i = 0; i < k; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (combos > kEnumerationGuard) throw GuardExceeded("brute_k_clique: more than 1e7 vertex subsets");
  if (k == 0) return std::vector<std::size_t>{};
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    if (G.is_clique(pick)) return pick;
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return std::nullopt;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

namespace {

template <class Dist>
std::pair<Index, double> nn_scan(std::span<const Index> active, Dist&& dist) {
  if (active.empty()) throw std::invalid_argument("brute_nn: empty active set");
  Index best = active[0];
  double bd = dist(best);
  for (Index a : active) {
    const double d = dist(a);
    if (d < bd || (d == bd && a < best)) {
      best = a;
      bd = d;
    }
  }
  return {best, bd};
}

template <class Dist>
std::vector<Index> range_scan(std::span<const Index> active, double R, Dist&& dist) {
  std::vector<Index> out;
  for (Index a : active) {
    if (within_radius(dist(a), R)) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::pair<Index, double> brute_nn(const FiniteMetric& S, std::span<const Index> active, Index q) {
  return nn_scan(active, [&](Index a) { return S.distance(q, a); });
}

std::pair<Index, double> brute_nn(const FiniteMetric& S, std::span<const Index> active,
                                  std::span<const double> q) {
  return nn_scan(active, [&](Index a) { return S.distance_to_point(q, a); });
}

std::vector<Index> brute_range(const FiniteMetric& S, std::span<const Index> active, Index q, double R) {
  return range_scan(active, R, [&](Index a) { return S.distance(q, a); });
}

std::vector<Index> brute_range(const FiniteMetric& S, std::span<const Index> active,
                               std::span<const double> q, double R) {
  return range_scan(active, R, [&](Index a) { return S.distance_to_point(q, a); });
}

}  // namespace distmatch
