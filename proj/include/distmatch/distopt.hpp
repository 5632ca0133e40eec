#pragma once

#include <optional>
#include <vector>

#include "distmatch/metric.hpp"

namespace distmatch {

struct Decision {
  bool positive = false;
  std::optional<Matching> witness;  // the matching behind a positive answer
};

/// Positive if some mapping has expansion <= e and inverse expansion <= e';
/// negative only if none has expansion <= (1+eps)e and inverse <= (1+eps)e'.
/// Pairs with e e' < 1 are answered negative without a search.
Decision decide_expansions(const FiniteMetric& X, const FiniteMetric& Y, double e, double e_inv,
                           double eps, unsigned threads = 1);

/// Positive if dist(X, Y) <= delta, negative if dist(X, Y) >= (1+eps) delta.
Decision decide_distortion(const FiniteMetric& X, const FiniteMetric& Y, double delta, double eps,
                           unsigned threads = 1);

struct DistortionEstimate {
  double delta = 0.0;  // dist(X, Y) <= delta <= (1+eps) dist(X, Y)
  Matching matching;   // a mapping whose distortion is delta
  std::vector<std::pair<double, bool>> probes;  // (delta, answer) in probe order
};

/// Exponential then geometric bisection search over decide_distortion.
DistortionEstimate min_distortion(const FiniteMetric& X, const FiniteMetric& Y, double eps,
                                  unsigned threads = 1);

/// Sweep over expansion candidates taken from all pattern/space pair ratios.
DistortionEstimate min_distortion_naive(const FiniteMetric& X, const FiniteMetric& Y, double eps,
                                        unsigned threads = 1);

}  // namespace distmatch
