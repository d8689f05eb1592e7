#include "mbench/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace mbench {

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::ri: return "RI";
    case Measure::ari: return "ARI";
    case Measure::ji: return "JI";
    case Measure::fmi: return "FMI";
    case Measure::f: return "F";
    case Measure::nmi: return "NMI";
  }
  throw std::invalid_argument("measure_name: bad enum value");
}

Measure parse_measure(const std::string& name) {
  for (Measure m : kAllMeasures)
    if (measure_name(m) == name) return m;
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected RI, ARI, JI, FMI, F or NMI)");
}

namespace {

void require_pairs(const PairCounts& pc) {
  if (pc.total < 1) throw std::invalid_argument("measure needs at least one element pair (n >= 2)");
}

bool identical_partitions(const PairCounts& pc) { return pc.n10 == 0 && pc.n01 == 0; }

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace

double rand_index(const PairCounts& pc) {
  require_pairs(pc);
  return static_cast<double>(pc.n11 + pc.n00) / static_cast<double>(pc.total);
}

double adjusted_rand(const ConfusionMatrix& cm) {
  if (cm.total < 2) throw std::invalid_argument("adjusted_rand: n must be >= 2");
  std::int64_t index = 0;
  for (std::int64_t c : cm.counts) index += choose2(c);
  std::int64_t a = 0;
  for (std::int64_t r : cm.row_marginals) a += choose2(r);
  std::int64_t b = 0;
  for (std::int64_t c : cm.col_marginals) b += choose2(c);
  const std::int64_t pairs = choose2(cm.total);

  // (index - ab/c) / ((a+b)/2 - ab/c), exact integer numerator/denominator
  const __int128 num = static_cast<__int128>(2) * pairs * index - static_cast<__int128>(2) * a * b;
  const __int128 den = static_cast<__int128>(pairs) * (a + b) - static_cast<__int128>(2) * a * b;
  if (den == 0) {
    // both partitions at the same degenerate extreme; equal to 1 iff identical
    if (num == 0 && a == b) return 1.0;
    throw std::domain_error("adjusted_rand: undefined for this degenerate pair");
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double jaccard(const PairCounts& pc) {
  require_pairs(pc);
  const std::int64_t den = pc.n11 + pc.n10 + pc.n01;
  if (den == 0) return 1.0;  // both all-singletons, hence identical
  return static_cast<double>(pc.n11) / static_cast<double>(den);
}

double fowlkes_mallows(const PairCounts& pc) {
  require_pairs(pc);
  const std::int64_t lhs = pc.n11 + pc.n10;
  const std::int64_t rhs = pc.n11 + pc.n01;
  if (lhs == 0 || rhs == 0) return identical_partitions(pc) ? 1.0 : 0.0;
  return static_cast<double>(pc.n11) /
         std::sqrt(static_cast<double>(lhs) * static_cast<double>(rhs));
}

double purity(const ConfusionMatrix& cm) {
  std::int64_t sum_max = 0;
  for (std::int32_t i = 0; i < cm.rows; ++i) {
    std::int64_t best = 0;
    for (std::int32_t j = 0; j < cm.cols; ++j) best = std::max(best, cm.at(i, j));
    sum_max += best;
  }
  return static_cast<double>(sum_max) / static_cast<double>(cm.total);
}

double f_measure(const ConfusionMatrix& cm) {
  double pu = purity(cm);
  // inverse purity = purity of the transposed matrix
  std::int64_t sum_max = 0;
  for (std::int32_t j = 0; j < cm.cols; ++j) {
    std::int64_t best = 0;
    for (std::int32_t i = 0; i < cm.rows; ++i) best = std::max(best, cm.at(i, j));
    sum_max += best;
  }
  double pu_inv = static_cast<double>(sum_max) / static_cast<double>(cm.total);
  return 2.0 * pu * pu_inv / (pu + pu_inv);
}

namespace {

double entropy(const std::vector<std::int64_t>& marginals, std::int64_t n) {
  double h = 0.0;
  for (std::int64_t m : marginals) {
    const double p = static_cast<double>(m) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const ConfusionMatrix& cm) {
  // identical partitions score exactly 1; the MI summation would otherwise
  // reproduce the entropy only up to rounding
  {
    std::int64_t sum_sq = 0, row_sq = 0, col_sq = 0;
    for (std::int64_t c : cm.counts) sum_sq += c * c;
    for (std::int64_t r : cm.row_marginals) row_sq += r * r;
    for (std::int64_t c : cm.col_marginals) col_sq += c * c;
    if (sum_sq == row_sq && sum_sq == col_sq) return 1.0;
  }
  const double hp = entropy(cm.row_marginals, cm.total);
  const double hq = entropy(cm.col_marginals, cm.total);
  if (hp + hq == 0.0) return 1.0;  // both single-cluster, hence identical
  const double n = static_cast<double>(cm.total);
  double mi = 0.0;
  for (std::int32_t i = 0; i < cm.rows; ++i) {
    for (std::int32_t j = 0; j < cm.cols; ++j) {
      const std::int64_t c = cm.at(i, j);
      if (c == 0) continue;
      const double pij = static_cast<double>(c) / n;
      const double pi = static_cast<double>(cm.row_marginals[static_cast<std::size_t>(i)]) / n;
      const double pj = static_cast<double>(cm.col_marginals[static_cast<std::size_t>(j)]) / n;
      mi += pij * std::log(pij / (pi * pj));
    }
  }
  return 2.0 * mi / (hp + hq);
}

std::vector<MeasureScore> score_matrix(const ConfusionMatrix& cm,
                                       std::span<const Measure> measures) {
  const PairCounts pc = pair_counts(cm);
  std::vector<MeasureScore> scores;
  scores.reserve(measures.size());
  for (Measure kind : measures) {
    MeasureScore s;
    s.kind = kind;
    switch (kind) {
      case Measure::ri: s.similarity = rand_index(pc); break;
      case Measure::ari: s.similarity = adjusted_rand(cm); break;
      case Measure::ji: s.similarity = jaccard(pc); break;
      case Measure::fmi: s.similarity = fowlkes_mallows(pc); break;
      case Measure::f: s.similarity = f_measure(cm); break;
      case Measure::nmi: s.similarity = nmi(cm); break;
    }
    s.dissimilarity = 1.0 - s.similarity;
    s.out_of_range = s.similarity < 0.0 || s.similarity > 1.0;
    scores.push_back(s);
  }
  return scores;
}

std::vector<MeasureScore> score_pair(const Partition& p, const Partition& p_prime,
                                     std::span<const Measure> measures) {
  return score_matrix(confusion_matrix(p, p_prime), measures);
}

MeasureScore dissimilarity(Measure kind, const Partition& p, const Partition& p_prime) {
  return score_pair(p, p_prime, std::span<const Measure>(&kind, 1)).front();
}

}  // namespace mbench
