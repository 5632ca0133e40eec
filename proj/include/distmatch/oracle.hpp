#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "distmatch/gadgets.hpp"
#include "distmatch/metric.hpp"

namespace distmatch {

/// Raised when an exhaustive enumeration would exceed its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kEnumerationGuard = 1e7;

/// n! / (n-k)!, saturating at +inf.
double injection_count(std::size_t k, std::size_t n);

/// All rho-matchings of X into Y in lexicographic order of targets. With a
/// positive `limit` the enumeration stops after that many.
std::vector<Matching> brute_rho_matchings(const FiniteMetric& X, const FiniteMetric& Y, double rho,
                                          std::size_t limit = 0);

/// Exact minimum distortion over all injections and the first minimiser.
std::pair<double, Matching> brute_min_distortion(const FiniteMetric& X, const FiniteMetric& Y);

/// Lexicographically first k-clique of G.
std::optional<std::vector<std::size_t>> brute_k_clique(const Graph& G, std::size_t k);

/// Nearest point of `active` to q, ties to the smaller index, with its distance.
std::pair<Index, double> brute_nn(const FiniteMetric& S, std::span<const Index> active, Index q);
std::pair<Index, double> brute_nn(const FiniteMetric& S, std::span<const Index> active,
                                  std::span<const double> q);

/// Points of `active` within R of q (shared tolerance), ascending.
std::vector<Index> brute_range(const FiniteMetric& S, std::span<const Index> active, Index q, double R);
std::vector<Index> brute_range(const FiniteMetric& S, std::span<const Index> active,
                               std::span<const double> q, double R);

}  // namespace distmatch
