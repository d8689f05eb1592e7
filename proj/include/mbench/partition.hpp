#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mbench/fraction.hpp"

namespace mbench {

// A partition of n elements into k non-overlapping, non-empty clusters.
// labels()[i] is the cluster of element i; cluster ids are dense in
// {0, ..., k-1} and every id occurs at least once. Immutable once built.
class Partition {
 public:
  // Validates density and non-emptiness; throws std::invalid_argument.
  explicit Partition(std::vector<std::int32_t> labels);

  std::int32_t n() const { return static_cast<std::int32_t>(labels_.size()); }
  std::int32_t cluster_count() const { return cluster_count_; }
  std::span<const std::int32_t> labels() const { return labels_; }
  std::int32_t label(std::int32_t i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& cluster_sizes() const { return sizes_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::int32_t> labels_;
  std::vector<std::int64_t> sizes_;
  std::int32_t cluster_count_ = 0;
};

// Cluster sizes derived from (n, k, h) via an arithmetic progression:
// sizes[i] = alpha + i * increment, with the integer remainder of the
// division added to the largest (last) cluster.
struct ClusterSizeSpec {
  std::int32_t n = 0;
  std::int32_t k = 0;
  double h = 0.0;
  double beta_max = 0.0;        // 2n / (k(k+1))
  std::int64_t increment = 0;   // floor(h * beta_max)
  std::int64_t alpha = 0;       // floor((n - increment*k(k-1)/2) / k)
  std::vector<std::int64_t> sizes;  // nondecreasing, sums to n
};

// Throws std::invalid_argument when the smallest computed size would be < 1
// (k too large for n at the given h) or when inputs are out of domain.
ClusterSizeSpec cluster_sizes(std::int32_t n, std::int32_t k, const Fraction& h);
ClusterSizeSpec cluster_sizes(std::int32_t n, std::int32_t k, double h);

// Canonical contiguous layout: cluster 0 occupies indices [0, sizes[0]),
// cluster 1 the next sizes[1] indices, and so on. Deterministic.
Partition build_reference_partition(const ClusterSizeSpec& spec);

// k x k' intersection counts n_ij between the clusters of two partitions,
// with row/column marginals and the shared element count.
struct ConfusionMatrix {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::vector<std::int64_t> counts;  // row-major, rows*cols
  std::vector<std::int64_t> row_marginals;
  std::vector<std::int64_t> col_marginals;
  std::int64_t total = 0;

  std::int64_t at(std::int32_t i, std::int32_t j) const {
    return counts[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(j)];
  }
};

// Throws std::invalid_argument on mismatched element counts.
ConfusionMatrix confusion_matrix(const Partition& p, const Partition& p_prime);

// Counts of unordered element pairs: together in both partitions (n11),
// apart in both (n00), together in only the first (n10) or second (n01).
struct PairCounts {
  std::int64_t n11 = 0;
  std::int64_t n00 = 0;
  std::int64_t n10 = 0;
  std::int64_t n01 = 0;
  std::int64_t total = 0;  // n(n-1)/2

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

PairCounts pair_counts(const ConfusionMatrix& cm);

}  // namespace mbench
