#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mbench/fraction.hpp"
#include "mbench/partition.hpp"

namespace mbench {

// The five deterministic parametric transformations.
enum class Transform : std::int8_t {
  knc,  // k New Clusters: a slice of every cluster becomes its own new cluster
  sc,   // Singleton Clusters: affected elements become single-element clusters
  onc,  // 1 New Cluster: affected elements of all clusters merge into one new cluster
  ncs,  // Neighbor Cluster Swaps: a slice of cluster i moves to cluster (i+1) mod k
  oc,   // Orthogonal Clusters: new clusters drawing at most one element per original cluster
};

inline constexpr Transform kAllTransforms[] = {Transform::knc, Transform::sc, Transform::onc,
                                               Transform::ncs, Transform::oc};

std::string transform_name(Transform t);
Transform parse_transform(const std::string& name);  // throws std::invalid_argument

// Transformation with intensity q in [0, 1]. For knc and ncs the effect is
// mirrored in a proportion of 0.5, so q maps to the proportion p = q/2;
// for the other kinds p = q.
struct TransformSpec {
  Transform kind = Transform::knc;
  Fraction q;

  Fraction effective_proportion() const {
    return (kind == Transform::knc || kind == Transform::ncs) ? q.halved() : q;
  }
};

struct TransformOptions {
  // The 1-New-Cluster transformation rejects q = 1 (it would merge everything
  // into a single cluster); the full-grid sweep opts in to that degenerate
  // point to keep the factorial design complete.
  bool allow_full_intensity_onc = false;
};

// Per-cluster counts of affected elements: floor(p * s_i) with the missing
// units (up to round(p * n)) assigned by largest remainder, ties broken by
// lower cluster index.
struct AffectedAllocation {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

AffectedAllocation affected_counts(std::span<const std::int64_t> sizes, const Fraction& p);

// Applies the transformation. Affected elements of each cluster are its
// highest element indices; output clusters are relabeled densely in order of
// first appearance. Throws std::invalid_argument on kind-specific
// preconditions (ncs/oc need k >= 2; onc needs q < 1 unless opted in).
Partition apply_transform(const Partition& p, const TransformSpec& spec,
                          const TransformOptions& options = {});

Partition t_knc(const Partition& p, const TransformSpec& spec);
Partition t_sc(const Partition& p, const TransformSpec& spec);
Partition t_onc(const Partition& p, const TransformSpec& spec, const TransformOptions& options = {});
Partition t_ncs(const Partition& p, const TransformSpec& spec);
Partition t_oc(const Partition& p, const TransformSpec& spec);

}  // namespace mbench
