#pragma once

// Test-only reference implementations. Everything here works from raw label
// vectors by direct enumeration or by the textbook closed forms, without
// touching the library's confusion-matrix path, so the two routes can be
// compared against each other.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

struct PairCounts {
  std::int64_t n11 = 0, n00 = 0, n10 = 0, n01 = 0;
};

// O(n^2) enumeration of all unordered element pairs.
inline PairCounts pair_counts(const std::vector<std::int32_t>& a,
                              const std::vector<std::int32_t>& b) {
  PairCounts pc;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same_a = a[i] == a[j];
      const bool same_b = b[i] == b[j];
      if (same_a && same_b) ++pc.n11;
      else if (same_a) ++pc.n10;
      else if (same_b) ++pc.n01;
      else ++pc.n00;
    }
  }
  return pc;
}

inline double rand_index(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  const PairCounts pc = pair_counts(a, b);
  return static_cast<double>(pc.n11 + pc.n00) /
         static_cast<double>(pc.n11 + pc.n00 + pc.n10 + pc.n01);
}

// Pair-count closed form of the adjusted Rand index.
inline double adjusted_rand(const std::vector<std::int32_t>& a,
                            const std::vector<std::int32_t>& b) {
  const PairCounts pc = pair_counts(a, b);
  const double num = 2.0 * (static_cast<double>(pc.n11) * static_cast<double>(pc.n00) -
                            static_cast<double>(pc.n10) * static_cast<double>(pc.n01));
  const double den = static_cast<double>(pc.n11 + pc.n10) * static_cast<double>(pc.n10 + pc.n00) +
                     static_cast<double>(pc.n11 + pc.n01) * static_cast<double>(pc.n01 + pc.n00);
  if (den == 0.0) return 1.0;  // only for identical degenerate pairs
  return num / den;
}

inline double jaccard(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  const PairCounts pc = pair_counts(a, b);
  const std::int64_t den = pc.n11 + pc.n10 + pc.n01;
  return den == 0 ? 1.0 : static_cast<double>(pc.n11) / static_cast<double>(den);
}

inline double fowlkes_mallows(const std::vector<std::int32_t>& a,
                              const std::vector<std::int32_t>& b) {
  const PairCounts pc = pair_counts(a, b);
  const std::int64_t lhs = pc.n11 + pc.n10;
  const std::int64_t rhs = pc.n11 + pc.n01;
  if (lhs == 0 || rhs == 0) return (pc.n10 == 0 && pc.n01 == 0) ? 1.0 : 0.0;
  return static_cast<double>(pc.n11) /
         std::sqrt(static_cast<double>(lhs) * static_cast<double>(rhs));
}

// Purity from explicit cluster member sets.
inline double purity(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  std::map<std::int32_t, std::map<std::int32_t, std::int64_t>> overlap;
  for (std::size_t i = 0; i < a.size(); ++i) ++overlap[a[i]][b[i]];
  std::int64_t total = 0;
  for (const auto& [cluster, counts] : overlap) {
    std::int64_t best = 0;
    for (const auto& [other, count] : counts) best = std::max(best, count);
    total += best;
  }
  return static_cast<double>(total) / static_cast<double>(a.size());
}

inline double f_measure(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  const double pu = purity(a, b);
  const double pu_inv = purity(b, a);
  return 2.0 * pu * pu_inv / (pu + pu_inv);
}

inline double entropy(const std::vector<std::int32_t>& labels) {
  std::map<std::int32_t, std::int64_t> counts;
  for (std::int32_t lab : labels) ++counts[lab];
  double h = 0.0;
  for (const auto& [lab, count] : counts) {
    const double p = static_cast<double>(count) / static_cast<double>(labels.size());
    h -= p * std::log(p);
  }
  return h;
}

inline double nmi(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
  const double ha = entropy(a);
  const double hb = entropy(b);
  if (ha + hb == 0.0) return 1.0;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> joint;
  std::map<std::int32_t, std::int64_t> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    const double pij = static_cast<double>(count) / n;
    const double pa = static_cast<double>(ca[key.first]) / n;
    const double pb = static_cast<double>(cb[key.second]) / n;
    mi += pij * std::log(pij / (pa * pb));
  }
  return 2.0 * mi / (ha + hb);
}

// Random partition with dense labels in order of first appearance; cluster
// count is free to vary.
inline std::vector<std::int32_t> random_partition(std::mt19937& rng, std::int32_t n,
                                                  std::int32_t max_clusters) {
  std::uniform_int_distribution<std::int32_t> dist(0, max_clusters - 1);
  std::vector<std::int32_t> raw(static_cast<std::size_t>(n));
  for (auto& lab : raw) lab = dist(rng);
  std::vector<std::int32_t> remap(static_cast<std::size_t>(max_clusters), -1);
  std::int32_t next = 0;
  for (auto& lab : raw) {
    if (remap[static_cast<std::size_t>(lab)] < 0) remap[static_cast<std::size_t>(lab)] = next++;
    lab = remap[static_cast<std::size_t>(lab)];
  }
  return raw;
}

}  // namespace oracle
