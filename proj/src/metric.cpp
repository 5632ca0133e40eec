#include "distmatch/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "distmatch/tolerance.hpp"

namespace distmatch {

namespace {

std::string describe(const Violation& v) {
  return to_string(v.kind) + " violation at (" + std::to_string(v.i) + ", " +
         std::to_string(v.j) + (v.kind == Violation::Kind::kTriangle
                                    ? ", " + std::to_string(v.l)
                                    : std::string()) +
         ")";
}

void require_subset(const FiniteMetric& metric, std::span<const Index> subset,
                    std::size_t min_size, const char* what) {
  if (subset.size() < min_size) {
    throw std::invalid_argument(std::string(what) + ": subset needs at least " +
                                std::to_string(min_size) + " point(s)");
  }
  for (Index i : subset) {
    if (i >= metric.size()) throw std::out_of_range(std::string(what) + ": index out of range");
  }
}

std::vector<Index> all_indices(const FiniteMetric& metric) {
  std::vector<Index> v(metric.size());
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

void require_comparable(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y) {
  if (sigma.size() != X.size()) {
    throw std::invalid_argument("matching length differs from pattern size");
  }
  for (Index t : sigma.targets()) {
    if (t >= Y.size()) throw std::out_of_range("matching target out of range");
  }
}

}  // namespace

FiniteMetric FiniteMetric::from_matrix(const std::vector<std::vector<double>>& rows,
                                       bool validate) {
  const std::size_t n = rows.size();
  std::vector<double> table;
  table.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("distance matrix is not square");
    table.insert(table.end(), row.begin(), row.end());
  }
  return from_flat_matrix(n, std::move(table), validate);
}

FiniteMetric FiniteMetric::from_flat_matrix(std::size_t n, std::vector<double> table,
                                            bool validate) {
  if (table.size() != n * n) throw std::invalid_argument("distance table has wrong size");
  FiniteMetric m;
  m.kind_ = Kind::kMatrix;
  m.n_ = n;
  m.data_ = std::move(table);
  if (validate) {
    ValidationReport report = validate_metric(m, 1);
    if (!report.ok()) {
      throw std::invalid_argument("invalid metric: " + describe(report.violations.front()));
    }
  }
  return m;
}

FiniteMetric FiniteMetric::from_points(const std::vector<std::vector<double>>& points) {
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("points have inconsistent dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  if (!points.empty() && dim == 0) throw std::invalid_argument("points have dimension 0");
  return from_flat_points(dim, std::move(coords));
}

FiniteMetric FiniteMetric::from_flat_points(std::size_t dim, std::vector<double> coords) {
  if (dim == 0) {
    if (!coords.empty()) throw std::invalid_argument("dimension 0 with coordinates");
  } else if (coords.size() % dim != 0) {
    throw std::invalid_argument("coordinate count is not a multiple of the dimension");
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
  FiniteMetric m;
  m.kind_ = Kind::kEuclidean;
  m.dim_ = dim;
  m.n_ = dim == 0 ? 0 : coords.size() / dim;
  m.data_ = std::move(coords);

  // Reject duplicates: sort lexicographically, compare neighbours.
  std::vector<Index> order(m.n_);
  std::iota(order.begin(), order.end(), Index{0});
  auto less = [&](Index a, Index b) {
    auto pa = m.point(a), pb = m.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t t = 1; t < order.size(); ++t) {
    auto pa = m.point(order[t - 1]), pb = m.point(order[t]);
    if (std::equal(pa.begin(), pa.end(), pb.begin())) {
      throw std::invalid_argument("duplicate points " + std::to_string(order[t - 1]) + " and " +
                                  std::to_string(order[t]));
    }
  }
  return m;
}

double FiniteMetric::distance(Index i, Index j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("distance: index out of range");
  return (*this)(i, j);
}

double FiniteMetric::euclid(std::span<const double> q, Index j) const {
  const double* p = data_.data() + j * dim_;
  double s = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    const double t = q[c] - p[c];
    s += t * t;
  }
  return std::sqrt(s);
}

double FiniteMetric::distance_to_point(std::span<const double> q, Index j) const {
  if (kind_ != Kind::kEuclidean) {
    throw std::logic_error("external query points need a Euclidean metric");
  }
  if (q.size() != dim_) throw std::invalid_argument("query point has wrong dimension");
  if (j >= n_) throw std::out_of_range("distance_to_point: index out of range");
  return euclid(q, j);
}

bool Matching::is_injective() const {
  std::vector<Index> sorted = targets_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kDiagonal: return "diagonal";
    case Violation::Kind::kSymmetry: return "symmetry";
    case Violation::Kind::kPositivity: return "positivity";
    case Violation::Kind::kTriangle: return "triangle";
    case Violation::Kind::kNotFinite: return "not-finite";
  }
  return "unknown";
}

ValidationReport validate_metric(const FiniteMetric& metric, std::size_t max_violations) {
  ValidationReport report;
  const std::size_t n = metric.size();
  auto add = [&](Violation v) {
    if (max_violations != 0 && report.violations.size() >= max_violations) {
      report.truncated = true;
      return false;
    }
    report.violations.push_back(v);
    return true;
  };

  bool pairwise_ok = true;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double d = metric(i, j);
      if (!std::isfinite(d)) {
        pairwise_ok = false;
        if (!add({Violation::Kind::kNotFinite, i, j, 0})) return report;
        continue;
      }
      if (i == j) {
        if (d != 0.0) {
          pairwise_ok = false;
          if (!add({Violation::Kind::kDiagonal, i, j, 0})) return report;
        }
        continue;
      }
      if (i < j && metric(j, i) != d) {
        pairwise_ok = false;
        if (!add({Violation::Kind::kSymmetry, i, j, 0})) return report;
      }
      if (i < j && !(d > 0.0)) {
        pairwise_ok = false;
        if (!add({Violation::Kind::kPositivity, i, j, 0})) return report;
      }
    }
  }
  // Triangle checks on a broken table would mostly repeat the same defects.
  if (!pairwise_ok) return report;

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dij = metric(i, j);
      for (Index l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        if (!approx_leq(dij, metric(i, l) + metric(l, j))) {
          if (!add({Violation::Kind::kTriangle, i, j, l})) return report;
        }
      }
    }
  }
  return report;
}

double diam(const FiniteMetric& metric, std::span<const Index> subset) {
  require_subset(metric, subset, 1, "diam");
  double best = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      best = std::max(best, metric(subset[a], subset[b]));
    }
  }
  return best;
}

double dmin(const FiniteMetric& metric, std::span<const Index> subset) {
  require_subset(metric, subset, 2, "dmin");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      best = std::min(best, metric(subset[a], subset[b]));
    }
  }
  return best;
}

double spread(const FiniteMetric& metric, std::span<const Index> subset) {
  require_subset(metric, subset, 2, "spread");
  return diam(metric, subset) / dmin(metric, subset);
}

double diam(const FiniteMetric& metric) { return diam(metric, all_indices(metric)); }
double dmin(const FiniteMetric& metric) { return dmin(metric, all_indices(metric)); }
double spread(const FiniteMetric& metric) { return spread(metric, all_indices(metric)); }

double matching_distance(const Matching& a, const Matching& b, const FiniteMetric& Y) {
  if (a.size() != b.size()) throw std::invalid_argument("matching_distance: length mismatch");
  double best = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] >= Y.size() || b[t] >= Y.size()) {
      throw std::out_of_range("matching_distance: target out of range");
    }
    best = std::max(best, Y(a[t], b[t]));
  }
  return best;
}

double expansion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y) {
  require_comparable(sigma, X, Y);
  if (X.size() < 2) throw std::invalid_argument("expansion needs at least two pattern points");
  double best = 0.0;
  for (Index a = 0; a < X.size(); ++a) {
    for (Index b = a + 1; b < X.size(); ++b) {
      best = std::max(best, Y(sigma[a], sigma[b]) / X(a, b));
    }
  }
  return best;
}

double inverse_expansion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y) {
  require_comparable(sigma, X, Y);
  if (X.size() < 2) throw std::invalid_argument("expansion needs at least two pattern points");
  double best = 0.0;
  for (Index a = 0; a < X.size(); ++a) {
    for (Index b = a + 1; b < X.size(); ++b) {
      const double dy = Y(sigma[a], sigma[b]);
      if (dy == 0.0) return std::numeric_limits<double>::infinity();
      best = std::max(best, X(a, b) / dy);
    }
  }
  return best;
}

double distortion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y) {
  return expansion(sigma, X, Y) * inverse_expansion(sigma, X, Y);
}

double achieved_rho(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y) {
  require_comparable(sigma, X, Y);
  if (X.size() < 2) return 1.0;
  return std::max({1.0, expansion(sigma, X, Y), inverse_expansion(sigma, X, Y)});
}

bool verify_matching(const Matching& sigma, std::span<const Index> domain,
                     const FiniteMetric& X, const FiniteMetric& Y, double rho) {
  if (!(rho >= 1.0)) throw std::invalid_argument("verify_matching: rho must be >= 1");
  if (sigma.size() != domain.size()) {
    throw std::invalid_argument("verify_matching: matching length differs from domain");
  }
  for (std::size_t a = 0; a < domain.size(); ++a) {
    if (sigma[a] >= Y.size() || domain[a] >= X.size()) return false;
    for (std::size_t b = a + 1; b < domain.size(); ++b) {
      const double dx = X(domain[a], domain[b]);
      const double dy = Y(sigma[a], sigma[b]);
      if (!approx_leq(dy, rho * dx)) return false;
      if (!approx_leq(dx, rho * dy)) return false;
    }
  }
  return true;
}

bool verify_matching(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y,
                     double rho) {
  if (sigma.size() != X.size()) return false;
  std::vector<Index> domain = all_indices(X);
  return verify_matching(sigma, domain, X, Y, rho);
}

FiniteMetric rescale(const FiniteMetric& metric, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("rescale: factor must be positive");
  }
  std::vector<double> data = metric.data();
  for (double& v : data) v *= factor;
  if (metric.is_euclidean()) return FiniteMetric::from_flat_points(metric.dim(), std::move(data));
  return FiniteMetric::from_flat_matrix(metric.size(), std::move(data), /*validate=*/false);
}

}  // namespace distmatch
