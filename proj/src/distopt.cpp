#include "distmatch/distopt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distmatch/matcher.hpp"
#include "distmatch/tolerance.hpp"
#include "distmatch/wspd.hpp"

namespace distmatch {

namespace {

void check_eps(double eps, const char* who) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument(std::string(who) + ": eps must be in (0, 1]");
}

void check_sizes(const FiniteMetric& X, const FiniteMetric& Y, const char* who) {
  if (X.size() < 2) throw std::invalid_argument(std::string(who) + ": pattern needs at least two points");
  if (X.size() > Y.size()) throw std::invalid_argument(std::string(who) + ": pattern larger than space");
}

Decision decide_with_lengths(const FiniteMetric& X, const FiniteMetric& Y, double delta, double eps,
                             const std::vector<double>& lengths, unsigned threads) {
  const double slack = eps / 6.0;
  for (double l : lengths) {
    for (Index a = 0; a < X.size(); ++a) {
      for (Index b = a + 1; b < X.size(); ++b) {
        const double dx = X(a, b);
        const double e = (1.0 + slack) * l / dx;
        const double e_inv = (1.0 + slack) * delta * dx / l;
        if (e * e_inv < 1.0) continue;
        Decision d = decide_expansions(X, Y, e, e_inv, slack, threads);
        if (d.positive) return d;
      }
    }
  }
  return {};
}

// Keeps the lowest-distortion witness seen so far.
void keep_best(DistortionEstimate& best, const Decision& d, const FiniteMetric& X, const FiniteMetric& Y) {
  if (!d.positive || !d.witness) return;
  const double v = distortion(*d.witness, X, Y);
  if (best.matching.size() == 0 || v < best.delta) {
    best.delta = v;
    best.matching = *d.witness;
  }
}

}  // namespace

Decision decide_expansions(const FiniteMetric& X, const FiniteMetric& Y, double e, double e_inv,
                           double eps, unsigned threads) {
  if (!(e > 0.0) || !(e_inv > 0.0) || !std::isfinite(e) || !std::isfinite(e_inv)) {
    throw std::invalid_argument("decide_expansions: expansions must be positive and finite");
  }
  check_eps(eps, "decide_expansions");
  if (!approx_geq(e * e_inv, 1.0)) return {};
  const double rho = std::max(1.0, std::sqrt(e * e_inv));
  const FiniteMetric scaled = rescale(Y, std::sqrt(e_inv / e));
  SolveOptions opt;
  opt.threads = threads;
  SolveResult r = solve_distortion(X, scaled, rho, eps, opt);
  if (!r.found()) return {};
  return {true, r.matchings.front()};
}

Decision decide_distortion(const FiniteMetric& X, const FiniteMetric& Y, double delta, double eps,
                           unsigned threads) {
  check_eps(eps, "decide_distortion");
  check_sizes(X, Y, "decide_distortion");
  if (!(delta >= 1.0) || !std::isfinite(delta)) throw std::invalid_argument("decide_distortion: delta must be >= 1");
  return decide_with_lengths(X, Y, delta, eps, candidate_lengths(Y, eps / 6.0), threads);
}

DistortionEstimate min_distortion(const FiniteMetric& X, const FiniteMetric& Y, double eps,
                                  unsigned threads) {
  check_eps(eps, "min_distortion");
  check_sizes(X, Y, "min_distortion");
  // Each decision runs at eps/2 so that its witness slack and the search
  // width together stay within the (1+eps) band.
  const double inner = eps / 2.0;
  const std::vector<double> lengths = candidate_lengths(Y, inner / 6.0);
  DistortionEstimate best;
  auto probe = [&](double delta) {
    Decision d = decide_with_lengths(X, Y, delta, inner, lengths, threads);
    best.probes.emplace_back(delta, d.positive);
    keep_best(best, d, X, Y);
    return d.positive;
  };

  double hi = 1.0;
  int rounds = 0;
  while (!probe(hi)) {
    if (++rounds > 2000) throw std::runtime_error("min_distortion: search did not terminate");
    hi *= 2.0;
  }
  if (hi > 1.0) {
    double lo = hi / 2.0;
    while (hi / lo > 1.0 + eps / 4.0) {
      const double mid = std::sqrt(lo * hi);
      if (probe(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  return best;
}

DistortionEstimate min_distortion_naive(const FiniteMetric& X, const FiniteMetric& Y, double eps,
                                        unsigned threads) {
  check_eps(eps, "min_distortion_naive");
  check_sizes(X, Y, "min_distortion_naive");
  std::vector<double> ratios;
  for (Index a = 0; a < X.size(); ++a) {
    for (Index b = a + 1; b < X.size(); ++b) {
      for (Index u = 0; u < Y.size(); ++u) {
        for (Index v = u + 1; v < Y.size(); ++v) ratios.push_back(Y(u, v) / X(a, b));
      }
    }
  }
  std::sort(ratios.begin(), ratios.end());
  std::vector<double> E;
  for (double r : ratios) {
    if (E.empty() || !approx_leq(r, E.back())) E.push_back(r);
  }
  // An optimal mapping's expansion is one of the ratios and its inverse
  // expansion the reciprocal of another, so both are drawn independently.
  struct Candidate {
    double product, e, e_inv;
  };
  std::vector<Candidate> cands;
  for (double e : E) {
    for (double f : E) {
      const double e_inv = 1.0 / f;
      const double p = e * e_inv;
      if (approx_geq(p, 1.0)) cands.push_back({p, e, e_inv});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.product, a.e) < std::tie(b.product, b.e);
  });
  DistortionEstimate best;
  for (const Candidate& c : cands) {
    Decision d = decide_expansions(X, Y, c.e, c.e_inv, eps / 3.0, threads);
    best.probes.emplace_back(c.product, d.positive);
    if (d.positive) {
      keep_best(best, d, X, Y);
      return best;
    }
  }
  throw std::logic_error("min_distortion_naive: no candidate was accepted");
}

}  // namespace distmatch
