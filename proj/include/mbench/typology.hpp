#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mbench/regression.hpp"

namespace mbench {

// One stacked bar as a probability vector: the cell's squared standardized
// coefficients of the ten effect terms (intercept excluded), normalized to
// sum 1.
struct ImportanceProfile {
  Measure measure;
  Transform transform;
  std::vector<double> proportions;
};

// Throws std::invalid_argument naming the cell when a cell's importances sum
// to zero.
std::vector<ImportanceProfile> importance_profiles(const ImportanceTable& table);

// Hellinger distance between two discrete probability vectors, in [0, 1].
double hellinger(std::span<const double> a, std::span<const double> b);

// Small dense symmetric distance matrix.
struct DistanceMatrix {
  int size = 0;
  std::vector<double> values;  // row-major size*size

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
                  static_cast<std::size_t>(j)];
  }
  double& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
                  static_cast<std::size_t>(j)];
  }
};

DistanceMatrix profile_distances(const std::vector<ImportanceProfile>& profiles);

// PAM with deterministic greedy BUILD (ties by lowest index) followed by
// best-improvement SWAP until no swap lowers the total distance to medoids.
struct KMedoidsResult {
  std::vector<int> medoids;     // sorted point indices
  std::vector<int> assignment;  // per point, index into medoids
  double total_cost = 0.0;
};
KMedoidsResult k_medoids(const DistanceMatrix& dist, int k);

// Mean over points of (b - a) / max(a, b); singletons contribute 0; throws
// std::invalid_argument with fewer than two clusters.
double silhouette(const DistanceMatrix& dist, const std::vector<int>& assignment);

struct TypologyCandidate {
  int k = 0;
  KMedoidsResult clustering;
  double silhouette = 0.0;
};

struct TypologyOptions {
  // With parsimony on, the smallest k whose silhouette is within margin of
  // the maximum is chosen instead of the argmax.
  bool parsimony = false;
  double parsimony_margin = 0.05;
};

struct TypologyResult {
  std::vector<ImportanceProfile> profiles;
  DistanceMatrix distance;
  std::vector<TypologyCandidate> candidates;  // k = 2 .. min(10, count-1)
  int chosen_k = 0;

  const TypologyCandidate& candidate(int k) const;
  // Cluster id of a profile in the chosen (or an explicit k's) solution.
  int cluster_of(Measure m, Transform t, int k = 0) const;
};

// Runs k-medoids over the whole candidate range and picks chosen_k by
// silhouette (ties to the smaller k). Requires at least 3 profiles.
TypologyResult select_typology(const std::vector<ImportanceProfile>& profiles,
                               const TypologyOptions& options = {});

// CSV: `measure,transform,cluster_id,is_medoid` for the chosen k.
void write_typology_csv(const TypologyResult& result, const std::string& path);
struct TypologyRow {
  Measure measure;
  Transform transform;
  int cluster_id = 0;
  bool is_medoid = false;
};
std::vector<TypologyRow> read_typology_csv(const std::string& path);

// CSV: `k,silhouette` over all candidates.
void write_silhouette_csv(const TypologyResult& result, const std::string& path);
std::vector<std::pair<int, double>> read_silhouette_csv(const std::string& path);

}  // namespace mbench
