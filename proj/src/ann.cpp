#include "distmatch/ann.hpp"

#include <algorithm>
#include <stdexcept>

namespace distmatch {

void AnnIndex::insert(Index i) {
  if (i >= host_->size()) throw std::out_of_range("AnnIndex::insert: index out of range");
  if (tree_.contains(i)) throw std::logic_error("AnnIndex::insert: point already active");
  tree_.insert(i, host_dist());
}

void AnnIndex::erase(Index i) {
  if (!tree_.contains(i)) throw std::logic_error("AnnIndex::erase: point not active");
  tree_.erase(i);
}

void AnnIndex::check_query(Index q) const {
  if (q >= host_->size()) throw std::out_of_range("AnnIndex: query index out of range");
}

void AnnIndex::check_query(std::span<const double> q) const {
  if (!host_->is_euclidean()) {
    throw std::logic_error("AnnIndex: external query points need a Euclidean host");
  }
  if (q.size() != host_->dim()) throw std::invalid_argument("AnnIndex: query has wrong dimension");
}

Index AnnIndex::query(Index q) const {
  check_query(q);
  auto hit = tree_.nearest(index_query(q), kApproxRatio);
  if (!hit) throw std::logic_error("AnnIndex::query on an empty index");
  return hit->first;
}

Index AnnIndex::query(std::span<const double> q) const {
  check_query(q);
  auto hit = tree_.nearest([this, q](NetTree::Id j) { return host_->distance_to_point(q, j); },
                           kApproxRatio);
  if (!hit) throw std::logic_error("AnnIndex::query on an empty index");
  return hit->first;
}

std::pair<Index, double> AnnIndex::nearest(Index q) const {
  check_query(q);
  auto hit = tree_.nearest(index_query(q), 1.0);
  if (!hit) throw std::logic_error("AnnIndex::nearest on an empty index");
  return *hit;
}

std::vector<Index> AnnIndex::range_query(Index q, double R) const {
  check_query(q);
  if (!(R > 0.0)) throw std::invalid_argument("range_query: radius must be positive");
  return tree_.within(index_query(q), R);
}

std::vector<Index> AnnIndex::range_query(std::span<const double> q, double R) const {
  check_query(q);
  if (!(R > 0.0)) throw std::invalid_argument("range_query: radius must be positive");
  return tree_.within([this, q](NetTree::Id j) { return host_->distance_to_point(q, j); }, R);
}

std::vector<Index> AnnIndex::range_query_by_deletion(Index q, double R) {
  check_query(q);
  if (!(R > 0.0)) throw std::invalid_argument("range_query: radius must be positive");
  std::vector<Index> reported;
  std::vector<Index> removed;
  while (!tree_.empty()) {
    const Index hat = query(q);
    const double d = (*host_)(q, hat);
    if (!within_radius(d, 1.5 * R)) break;
    if (within_radius(d, R)) reported.push_back(hat);
    tree_.erase(hat);
    removed.push_back(hat);
  }
  for (Index u : removed) tree_.insert(u, host_dist());
  std::sort(reported.begin(), reported.end());
  return reported;
}

bool AnnIndex::any_closer_than(Index q, double R) const {
  check_query(q);
  return tree_.any_closer_than(index_query(q), R);
}

}  // namespace distmatch
