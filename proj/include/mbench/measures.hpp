#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mbench/partition.hpp"

namespace mbench {

enum class Measure : std::int8_t { ri, ari, ji, fmi, f, nmi };

inline constexpr Measure kAllMeasures[] = {Measure::ri, Measure::ari, Measure::ji,
                                           Measure::fmi, Measure::f, Measure::nmi};

std::string measure_name(Measure m);                 // "RI", "ARI", "JI", "FMI", "F", "NMI"
Measure parse_measure(const std::string& name);      // throws std::invalid_argument

// Similarity scores. All are symmetric in the two partitions and equal 1 for
// identical partitions. Every one except ARI lies in [0, 1]; ARI can be
// negative for very dissimilar partitions.
double rand_index(const PairCounts& pc);             // (n11 + n00) / total
double adjusted_rand(const ConfusionMatrix& cm);     // chance-corrected Rand index
double jaccard(const PairCounts& pc);                // n11 / (n11 + n10 + n01)
double fowlkes_mallows(const PairCounts& pc);        // n11 / sqrt((n11+n10)(n11+n01))
double purity(const ConfusionMatrix& cm);            // sum_i max_j n_ij / n
double f_measure(const ConfusionMatrix& cm);         // harmonic mean of the two purities
double nmi(const ConfusionMatrix& cm);               // 2 MI / (H(P) + H(P')), natural log

struct MeasureScore {
  Measure kind = Measure::ri;
  double similarity = 0.0;
  double dissimilarity = 0.0;  // 1 - similarity
  bool out_of_range = false;   // similarity outside [0, 1]; recorded unclamped
};

MeasureScore dissimilarity(Measure kind, const Partition& p, const Partition& p_prime);

// All requested measures from one confusion matrix; cheaper than repeated
// dissimilarity() calls on the same pair.
std::vector<MeasureScore> score_pair(const Partition& p, const Partition& p_prime,
                                     std::span<const Measure> measures);
std::vector<MeasureScore> score_matrix(const ConfusionMatrix& cm,
                                       std::span<const Measure> measures);

}  // namespace mbench
