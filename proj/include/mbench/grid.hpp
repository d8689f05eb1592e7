#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbench/measures.hpp"
#include "mbench/transforms.hpp"

namespace mbench {

// Factorial parameter grid: every combination of one value per list defines
// one partition pair; every pair is scored by every configured measure.
struct GridConfig {
  std::vector<std::int32_t> n_values;
  std::vector<std::int32_t> k_values;
  std::vector<double> h_values;
  std::vector<double> q_values;
  std::vector<Transform> transforms;
  std::vector<Measure> measures;

  std::int64_t pair_count() const;
  std::int64_t record_count() const;
  // Throws std::invalid_argument on empty lists or out-of-domain values.
  void validate() const;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

// n in {3240, 4320, ..., 12960}, k in {2..11}, h in {0.0..0.9}, q in
// {0.1..1.0}, all transformations, all measures: 50,000 pairs.
GridConfig default_grid();

// Key-value config file: `key = v1,v2,...` lines, '#' comments. Keys:
// n_values, k_values, h_values, q_values, transforms, measures.
GridConfig load_grid_config(const std::string& path);
GridConfig parse_grid_config(const std::string& text);  // throws with line numbers
std::string format_grid_config(const GridConfig& config);

// FNV-1a hash of the canonical config text, hex-encoded.
std::string grid_hash(const GridConfig& config);

}  // namespace mbench
