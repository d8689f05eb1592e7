#include "mbench/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mbench {

std::string transform_name(Transform t) {
  switch (t) {
    case Transform::knc: return "knc";
    case Transform::sc: return "sc";
    case Transform::onc: return "onc";
    case Transform::ncs: return "ncs";
    case Transform::oc: return "oc";
  }
  throw std::invalid_argument("transform_name: bad enum value");
}

Transform parse_transform(const std::string& name) {
  for (Transform t : kAllTransforms)
    if (transform_name(t) == name) return t;
  throw std::invalid_argument("unknown transformation '" + name +
                              "' (expected knc, sc, onc, ncs or oc)");
}

AffectedAllocation affected_counts(std::span<const std::int64_t> sizes, const Fraction& p) {
  if (p.num() > p.den()) throw std::invalid_argument("affected_counts: proportion must be <= 1");
  const std::size_t k = sizes.size();
  std::int64_t n = 0;
  for (std::int64_t s : sizes) n += s;

  AffectedAllocation alloc;
  alloc.counts.resize(k);
  std::vector<std::int64_t> remainders(k);
  std::int64_t floor_sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    alloc.counts[i] = p.floor_scaled(sizes[i]);
    remainders[i] = p.remainder_scaled(sizes[i]);
    floor_sum += alloc.counts[i];
  }
  const std::int64_t target = p.round_scaled(n);

  // largest-remainder apportionment of the missing units, ties to the lower
  // cluster index
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::int64_t d = 0; d < target - floor_sum; ++d) ++alloc.counts[order[static_cast<std::size_t>(d)]];
  alloc.total = target;
  return alloc;
}

namespace {

// Element indices of each cluster in increasing order.
std::vector<std::vector<std::int32_t>> cluster_members(const Partition& p) {
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(p.cluster_count()));
  for (std::size_t c = 0; c < members.size(); ++c)
    members[c].reserve(static_cast<std::size_t>(p.cluster_sizes()[c]));
  for (std::int32_t i = 0; i < p.n(); ++i)
    members[static_cast<std::size_t>(p.label(i))].push_back(i);
  return members;
}

Partition relabel_dense(std::vector<std::int32_t> raw, std::int32_t id_bound) {
  std::vector<std::int32_t> remap(static_cast<std::size_t>(id_bound), -1);
  std::int32_t next = 0;
  for (std::int32_t& lab : raw) {
    std::int32_t& slot = remap[static_cast<std::size_t>(lab)];
    if (slot < 0) slot = next++;
    lab = slot;
  }
  return Partition(std::move(raw));
}

// Marks the c_i highest member indices of every cluster and hands them to
// `assign(cluster, j, element)`, j running over a cluster's affected
// elements in increasing index order.
template <typename Assign>
std::vector<std::int32_t> with_affected(const Partition& p, const AffectedAllocation& alloc,
                                        Assign&& assign) {
  std::vector<std::int32_t> raw(p.labels().begin(), p.labels().end());
  const auto members = cluster_members(p);
  for (std::size_t c = 0; c < members.size(); ++c) {
    const std::int64_t count = alloc.counts[c];
    const std::size_t first = members[c].size() - static_cast<std::size_t>(count);
    for (std::int64_t j = 0; j < count; ++j)
      assign(static_cast<std::int32_t>(c), j, members[c][first + static_cast<std::size_t>(j)], raw);
  }
  return raw;
}

AffectedAllocation allocation_for(const Partition& p, const TransformSpec& spec) {
  return affected_counts(p.cluster_sizes(), spec.effective_proportion());
}

}  // namespace

Partition t_knc(const Partition& p, const TransformSpec& spec) {
  const std::int32_t k = p.cluster_count();
  auto raw = with_affected(p, allocation_for(p, spec),
                           [&](std::int32_t c, std::int64_t, std::int32_t e,
                               std::vector<std::int32_t>& out) { out[static_cast<std::size_t>(e)] = k + c; });
  return relabel_dense(std::move(raw), 2 * k);
}

Partition t_sc(const Partition& p, const TransformSpec& spec) {
  const std::int32_t k = p.cluster_count();
  std::int32_t next = k;
  auto raw = with_affected(p, allocation_for(p, spec),
                           [&](std::int32_t, std::int64_t, std::int32_t e,
                               std::vector<std::int32_t>& out) { out[static_cast<std::size_t>(e)] = next++; });
  return relabel_dense(std::move(raw), next);
}

Partition t_onc(const Partition& p, const TransformSpec& spec, const TransformOptions& options) {
  if (spec.q.is_one() && !options.allow_full_intensity_onc)
    throw std::invalid_argument("onc: q = 1 would merge every cluster into one");
  const std::int32_t k = p.cluster_count();
  auto raw = with_affected(p, allocation_for(p, spec),
                           [&](std::int32_t, std::int64_t, std::int32_t e,
                               std::vector<std::int32_t>& out) { out[static_cast<std::size_t>(e)] = k; });
  return relabel_dense(std::move(raw), k + 1);
}

Partition t_ncs(const Partition& p, const TransformSpec& spec) {
  const std::int32_t k = p.cluster_count();
  if (k < 2) throw std::invalid_argument("ncs: k must be >= 2");
  auto raw = with_affected(p, allocation_for(p, spec),
                           [&](std::int32_t c, std::int64_t, std::int32_t e,
                               std::vector<std::int32_t>& out) { out[static_cast<std::size_t>(e)] = (c + 1) % k; });
  return relabel_dense(std::move(raw), k);
}

Partition t_oc(const Partition& p, const TransformSpec& spec) {
  const std::int32_t k = p.cluster_count();
  if (k < 2) throw std::invalid_argument("oc: k must be >= 2");
  const AffectedAllocation alloc = allocation_for(p, spec);
  std::int64_t max_c = 0;
  for (std::int64_t c : alloc.counts) max_c = std::max(max_c, c);
  auto raw = with_affected(p, alloc,
                           [&](std::int32_t, std::int64_t j, std::int32_t e,
                               std::vector<std::int32_t>& out) { out[static_cast<std::size_t>(e)] = k + static_cast<std::int32_t>(j); });
  return relabel_dense(std::move(raw), k + static_cast<std::int32_t>(max_c));
}

Partition apply_transform(const Partition& p, const TransformSpec& spec,
                          const TransformOptions& options) {
  if (spec.q.num() > spec.q.den())
    throw std::invalid_argument("apply_transform: q must be in [0, 1]");
  switch (spec.kind) {
    case Transform::knc: return t_knc(p, spec);
    case Transform::sc: return t_sc(p, spec);
    case Transform::onc: return t_onc(p, spec, options);
    case Transform::ncs: return t_ncs(p, spec);
    case Transform::oc: return t_oc(p, spec);
  }
  throw std::invalid_argument("apply_transform: bad transformation kind");
}

}  // namespace mbench
