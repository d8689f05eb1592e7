#include "mbench/partition.hpp"

#include <stdexcept>
#include <string>

namespace mbench {

Partition::Partition(std::vector<std::int32_t> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("partition: needs at least one element");
  std::int32_t max_label = -1;
  for (std::int32_t lab : labels_) {
    if (lab < 0) throw std::invalid_argument("partition: negative cluster id");
    if (lab > max_label) max_label = lab;
  }
  cluster_count_ = max_label + 1;
  if (cluster_count_ > n())
    throw std::invalid_argument("partition: cluster ids exceed element count");
  sizes_.assign(static_cast<std::size_t>(cluster_count_), 0);
  for (std::int32_t lab : labels_) ++sizes_[static_cast<std::size_t>(lab)];
  for (std::int32_t c = 0; c < cluster_count_; ++c) {
    if (sizes_[static_cast<std::size_t>(c)] == 0)
      throw std::invalid_argument("partition: empty cluster " + std::to_string(c));
  }
}

ClusterSizeSpec cluster_sizes(std::int32_t n, std::int32_t k, const Fraction& h) {
  if (n < 1) throw std::invalid_argument("cluster_sizes: n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("cluster_sizes: need 1 <= k <= n");
  if (h.num() > h.den()) throw std::invalid_argument("cluster_sizes: h must be in [0, 1]");

  ClusterSizeSpec spec;
  spec.n = n;
  spec.k = k;
  spec.h = h.value();
  const std::int64_t kk = static_cast<std::int64_t>(k);
  spec.beta_max = 2.0 * n / (static_cast<double>(kk) * (kk + 1));
  // increment = floor(h * 2n / (k(k+1))), exact
  spec.increment = h.num() * 2 * n / (h.den() * kk * (kk + 1));
  spec.alpha = (n - spec.increment * kk * (kk - 1) / 2) / kk;
  if (spec.alpha < 1)
    throw std::invalid_argument("cluster_sizes: smallest cluster would be empty (n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
  spec.sizes.resize(static_cast<std::size_t>(k));
  std::int64_t sum = 0;
  for (std::int32_t i = 0; i < k; ++i) {
    spec.sizes[static_cast<std::size_t>(i)] = spec.alpha + i * spec.increment;
    sum += spec.sizes[static_cast<std::size_t>(i)];
  }
  spec.sizes.back() += n - sum;  // integer remainder goes to the largest cluster
  return spec;
}

ClusterSizeSpec cluster_sizes(std::int32_t n, std::int32_t k, double h) {
  if (!(h >= 0.0) || !(h <= 1.0)) throw std::invalid_argument("cluster_sizes: h must be in [0, 1]");
  return cluster_sizes(n, k, Fraction::from_decimal(h));
}

Partition build_reference_partition(const ClusterSizeSpec& spec) {
  std::vector<std::int32_t> labels;
  labels.reserve(static_cast<std::size_t>(spec.n));
  for (std::int32_t c = 0; c < spec.k; ++c)
    labels.insert(labels.end(), static_cast<std::size_t>(spec.sizes[static_cast<std::size_t>(c)]),
                  c);
  return Partition(std::move(labels));
}

ConfusionMatrix confusion_matrix(const Partition& p, const Partition& p_prime) {
  if (p.n() != p_prime.n())
    throw std::invalid_argument("confusion_matrix: partitions cover different element counts");
  ConfusionMatrix cm;
  cm.rows = p.cluster_count();
  cm.cols = p_prime.cluster_count();
  cm.total = p.n();
  cm.counts.assign(static_cast<std::size_t>(cm.rows) * static_cast<std::size_t>(cm.cols), 0);
  for (std::int32_t i = 0; i < p.n(); ++i)
    ++cm.counts[static_cast<std::size_t>(p.label(i)) * static_cast<std::size_t>(cm.cols) +
                static_cast<std::size_t>(p_prime.label(i))];
  cm.row_marginals.assign(static_cast<std::size_t>(cm.rows), 0);
  cm.col_marginals.assign(static_cast<std::size_t>(cm.cols), 0);
  for (std::int32_t i = 0; i < cm.rows; ++i) {
    for (std::int32_t j = 0; j < cm.cols; ++j) {
      cm.row_marginals[static_cast<std::size_t>(i)] += cm.at(i, j);
      cm.col_marginals[static_cast<std::size_t>(j)] += cm.at(i, j);
    }
  }
  return cm;
}

PairCounts pair_counts(const ConfusionMatrix& cm) {
  PairCounts pc;
  std::int64_t sum_sq = 0;
  for (std::int64_t c : cm.counts) sum_sq += c * c;
  std::int64_t row_sq = 0;
  for (std::int64_t r : cm.row_marginals) row_sq += r * r;
  std::int64_t col_sq = 0;
  for (std::int64_t c : cm.col_marginals) col_sq += c * c;

  pc.total = cm.total * (cm.total - 1) / 2;
  pc.n11 = (sum_sq - cm.total) / 2;
  pc.n10 = (row_sq - sum_sq) / 2;
  pc.n01 = (col_sq - sum_sq) / 2;
  pc.n00 = pc.total - pc.n11 - pc.n10 - pc.n01;
  return pc;
}

}  // namespace mbench
