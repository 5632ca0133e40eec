#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace distmatch {

using Index = std::size_t;

/// A finite metric space with a symmetric distance oracle. Immutable after
/// construction; either an explicit n x n table or a set of coordinate tuples
/// under the L2 norm.
class FiniteMetric {
 public:
  enum class Kind { kMatrix, kEuclidean };

  FiniteMetric() = default;

  /// Builds from a full distance table. With `validate` the table is checked
  /// for symmetry, positivity and the triangle inequality (O(n^3)).
  static FiniteMetric from_matrix(const std::vector<std::vector<double>>& rows,
                                  bool validate = true);
  /// Row-major n x n table.
  static FiniteMetric from_flat_matrix(std::size_t n, std::vector<double> table,
                                       bool validate = true);
  /// Builds from coordinate tuples of a common dimension. Duplicate points are
  /// rejected since distinct indices must be at positive distance.
  static FiniteMetric from_points(const std::vector<std::vector<double>>& points);
  static FiniteMetric from_flat_points(std::size_t dim, std::vector<double> coords);

  Kind kind() const { return kind_; }
  bool is_euclidean() const { return kind_ == Kind::kEuclidean; }
  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  /// Bounds-checked distance.
  double distance(Index i, Index j) const;

  /// Unchecked distance for hot loops.
  double operator()(Index i, Index j) const {
    if (kind_ == Kind::kMatrix) return data_[i * n_ + j];
    return euclid(point(i), j);
  }

  /// Coordinates of point i (Euclidean form only).
  std::span<const double> point(Index i) const {
    return {data_.data() + i * dim_, dim_};
  }

  /// Distance from an external coordinate tuple to point j (Euclidean form only).
  double distance_to_point(std::span<const double> q, Index j) const;

  /// Raw storage: the row-major table or the row-major coordinates.
  const std::vector<double>& data() const { return data_; }

 private:
  double euclid(std::span<const double> q, Index j) const;

  Kind kind_ = Kind::kMatrix;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// An injective assignment from pattern indices to target indices. Position t
/// holds the image of the t-th pattern point of whatever domain the matching
/// is defined on (the whole pattern, or a sorted subset of it).
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Index> targets) : targets_(std::move(targets)) {}
  Matching(std::initializer_list<Index> targets) : targets_(targets) {}

  std::size_t size() const { return targets_.size(); }
  Index operator[](std::size_t t) const { return targets_[t]; }
  const std::vector<Index>& targets() const { return targets_; }
  bool is_injective() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<Index> targets_;
};

struct Violation {
  enum class Kind { kDiagonal, kSymmetry, kPositivity, kTriangle, kNotFinite };
  Kind kind;
  Index i = 0;
  Index j = 0;
  Index l = 0;  // middle point of a triangle violation
};

std::string to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool truncated = false;
  bool ok() const { return violations.empty(); }
};

/// Lists violations of the metric axioms. Triangle violations carry the
/// witnessing triple (i, j, l) with d(i,j) > d(i,l) + d(l,j). At most
/// `max_violations` entries are reported (0 = unlimited).
ValidationReport validate_metric(const FiniteMetric& metric, std::size_t max_violations = 0);

double diam(const FiniteMetric& metric, std::span<const Index> subset);
double dmin(const FiniteMetric& metric, std::span<const Index> subset);
double spread(const FiniteMetric& metric, std::span<const Index> subset);

double diam(const FiniteMetric& metric);
double dmin(const FiniteMetric& metric);
double spread(const FiniteMetric& metric);

/// Product (max) metric between two matchings on the same domain.
double matching_distance(const Matching& a, const Matching& b, const FiniteMetric& Y);

/// max over pairs of d_Y(s(x), s(x')) / d_X(x, x').
double expansion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y);
/// max over pairs of d_X(x, x') / d_Y(s(x), s(x')).
double inverse_expansion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y);
double distortion(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y);

/// Smallest rho for which sigma satisfies the two-sided rho bound; 1 for k < 2.
double achieved_rho(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y);

/// True iff (1/rho) d_X <= d_Y(sigma) <= rho d_X on every pair, up to tolerance.
bool verify_matching(const Matching& sigma, const FiniteMetric& X, const FiniteMetric& Y,
                     double rho);

/// Same check restricted to a pattern subset: position t of sigma is the
/// image of pattern point domain[t].
bool verify_matching(const Matching& sigma, std::span<const Index> domain,
                     const FiniteMetric& X, const FiniteMetric& Y, double rho);

FiniteMetric rescale(const FiniteMetric& metric, double factor);

}  // namespace distmatch
