#include "mbench/typology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mbench/errors.hpp"

namespace mbench {

std::vector<ImportanceProfile> importance_profiles(const ImportanceTable& table) {
  std::vector<ImportanceProfile> profiles;
  profiles.reserve(table.cells.size());
  for (const auto& cell : table.cells) {
    ImportanceProfile profile;
    profile.measure = cell.measure;
    profile.transform = cell.transform;
    // effect terms only: the intercept carries the cell's mean level, not a
    // parameter sensitivity
    profile.proportions.assign(cell.importance.begin() + 1, cell.importance.end());
    const double sum = std::accumulate(profile.proportions.begin(), profile.proportions.end(), 0.0);
    if (!(sum > 0.0))
      throw std::invalid_argument("importance_profiles: cell " + measure_name(cell.measure) +
                                  ":" + transform_name(cell.transform) + " has zero importance");
    for (double& p : profile.proportions) p /= sum;
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

double hellinger(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hellinger: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::sqrt(a[i]) - std::sqrt(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum / 2.0);
}

DistanceMatrix profile_distances(const std::vector<ImportanceProfile>& profiles) {
  DistanceMatrix dist;
  dist.size = static_cast<int>(profiles.size());
  dist.values.assign(static_cast<std::size_t>(dist.size) * static_cast<std::size_t>(dist.size), 0.0);
  for (int i = 0; i < dist.size; ++i)
    for (int j = i + 1; j < dist.size; ++j) {
      const double d = hellinger(profiles[static_cast<std::size_t>(i)].proportions,
                                 profiles[static_cast<std::size_t>(j)].proportions);
      dist.at(i, j) = d;
      dist.at(j, i) = d;
    }
  return dist;
}

namespace {

double assignment_cost(const DistanceMatrix& dist, const std::vector<int>& medoids) {
  double cost = 0.0;
  for (int i = 0; i < dist.size; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int m : medoids) best = std::min(best, dist.at(i, m));
    cost += best;
  }
  return cost;
}

}  // namespace

KMedoidsResult k_medoids(const DistanceMatrix& dist, int k) {
  const int n = dist.size;
  if (k < 2 || k >= n) throw std::invalid_argument("k_medoids: need 2 <= k < point count");

  // BUILD: greedy cost minimization, ties to the lowest index
  std::vector<int> medoids;
  {
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
      double cost = 0.0;
      for (int i = 0; i < n; ++i) cost += dist.at(i, c);
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    medoids.push_back(best);
  }
  std::vector<double> nearest(static_cast<std::size_t>(n));
  auto refresh_nearest = [&] {
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int m : medoids) best = std::min(best, dist.at(i, m));
      nearest[static_cast<std::size_t>(i)] = best;
    }
  };
  while (static_cast<int>(medoids.size()) < k) {
    refresh_nearest();
    int best = -1;
    double best_reduction = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
      if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
      double reduction = 0.0;
      for (int i = 0; i < n; ++i)
        reduction += std::max(nearest[static_cast<std::size_t>(i)] - dist.at(i, c), 0.0);
      if (reduction > best_reduction) {
        best_reduction = reduction;
        best = c;
      }
    }
    medoids.push_back(best);
  }
  std::sort(medoids.begin(), medoids.end());

  // SWAP: apply the best strictly improving (medoid, candidate) exchange
  // until none exists; the objective strictly decreases, so this terminates
  double current = assignment_cost(dist, medoids);
  for (;;) {
    double best_cost = current;
    std::vector<int> best_medoids;
    for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
      for (int c = 0; c < n; ++c) {
        if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
        std::vector<int> trial = medoids;
        trial[mi] = c;
        std::sort(trial.begin(), trial.end());
        const double cost = assignment_cost(dist, trial);
        if (cost < best_cost) {
          best_cost = cost;
          best_medoids = std::move(trial);
        }
      }
    }
    if (best_medoids.empty()) break;
    medoids = std::move(best_medoids);
    current = best_cost;
  }

  KMedoidsResult result;
  result.medoids = medoids;
  result.total_cost = current;
  result.assignment.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = dist.at(i, medoids[0]);
    for (std::size_t m = 1; m < medoids.size(); ++m) {
      const double d = dist.at(i, medoids[m]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(m);
      }
    }
    result.assignment[static_cast<std::size_t>(i)] = best;
  }
  return result;
}

double silhouette(const DistanceMatrix& dist, const std::vector<int>& assignment) {
  const int n = dist.size;
  if (static_cast<int>(assignment.size()) != n)
    throw std::invalid_argument("silhouette: assignment size mismatch");
  int nclusters = 0;
  for (int a : assignment) nclusters = std::max(nclusters, a + 1);
  if (nclusters < 2) throw std::invalid_argument("silhouette: needs at least two clusters");

  std::vector<int> sizes(static_cast<std::size_t>(nclusters), 0);
  for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];

  double total = 0.0;
  std::vector<double> mean_to(static_cast<std::size_t>(nclusters));
  for (int i = 0; i < n; ++i) {
    std::fill(mean_to.begin(), mean_to.end(), 0.0);
    for (int j = 0; j < n; ++j)
      if (j != i) mean_to[static_cast<std::size_t>(assignment[static_cast<std::size_t>(j)])] += dist.at(i, j);
    const int own = assignment[static_cast<std::size_t>(i)];
    const int own_size = sizes[static_cast<std::size_t>(own)];
    if (own_size <= 1) continue;  // singleton contributes 0
    const double a = mean_to[static_cast<std::size_t>(own)] / (own_size - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < nclusters; ++c) {
      if (c == own || sizes[static_cast<std::size_t>(c)] == 0) continue;
      b = std::min(b, mean_to[static_cast<std::size_t>(c)] / sizes[static_cast<std::size_t>(c)]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;  // all-identical points contribute 0
  }
  return total / n;
}

const TypologyCandidate& TypologyResult::candidate(int k) const {
  for (const TypologyCandidate& c : candidates)
    if (c.k == k) return c;
  throw std::invalid_argument("typology: no candidate with k = " + std::to_string(k));
}

int TypologyResult::cluster_of(Measure m, Transform t, int k) const {
  const TypologyCandidate& c = candidate(k == 0 ? chosen_k : k);
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (profiles[i].measure == m && profiles[i].transform == t)
      return c.clustering.assignment[i];
  throw std::invalid_argument("typology: no profile " + measure_name(m) + ":" + transform_name(t));
}

TypologyResult select_typology(const std::vector<ImportanceProfile>& profiles,
                               const TypologyOptions& options) {
  if (profiles.size() < 3) throw std::invalid_argument("select_typology: needs at least 3 profiles");

  TypologyResult result;
  result.profiles = profiles;
  result.distance = profile_distances(profiles);

  const int k_max = std::min(10, static_cast<int>(profiles.size()) - 1);
  for (int k = 2; k <= k_max; ++k) {
    TypologyCandidate candidate;
    candidate.k = k;
    candidate.clustering = k_medoids(result.distance, k);
    candidate.silhouette = silhouette(result.distance, candidate.clustering.assignment);
    result.candidates.push_back(std::move(candidate));
  }

  double best = -2.0;
  for (const TypologyCandidate& c : result.candidates) {
    if (c.silhouette > best) {
      best = c.silhouette;
      result.chosen_k = c.k;
    }
  }
  if (options.parsimony) {
    for (const TypologyCandidate& c : result.candidates) {
      if (c.silhouette >= best - options.parsimony_margin) {
        result.chosen_k = c.k;  // candidates are in increasing k order
        break;
      }
    }
  }
  return result;
}

void write_typology_csv(const TypologyResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "measure,transform,cluster_id,is_medoid\n";
  const TypologyCandidate& chosen = result.candidate(result.chosen_k);
  for (std::size_t i = 0; i < result.profiles.size(); ++i) {
    const bool medoid =
        std::find(chosen.clustering.medoids.begin(), chosen.clustering.medoids.end(),
                  static_cast<int>(i)) != chosen.clustering.medoids.end();
    out << measure_name(result.profiles[i].measure) << ','
        << transform_name(result.profiles[i].transform) << ',' << chosen.clustering.assignment[i]
        << ',' << (medoid ? "true" : "false") << "\n";
  }
}

void write_silhouette_csv(const TypologyResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "k,silhouette\n";
  for (const TypologyCandidate& c : result.candidates)
    out << c.k << ',' << format_real(c.silhouette) << "\n";
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<TypologyRow> read_typology_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open csv '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error("csv '" + path + "': empty file");
  std::vector<TypologyRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 4)
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": expected 4 fields");
    try {
      rows.push_back({parse_measure(fields[0]), parse_transform(fields[1]), std::stoi(fields[2]),
                      fields[3] == "true"});
    } catch (const std::invalid_argument& e) {
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<std::pair<int, double>> read_silhouette_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open csv '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error("csv '" + path + "': empty file");
  std::vector<std::pair<int, double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 2)
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": expected 2 fields");
    double silhouette_value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), silhouette_value);
    if ((ec != std::errc() && ec != std::errc::result_out_of_range) ||
        ptr != fields[1].data() + fields[1].size())
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": bad row");
    try {
      rows.emplace_back(std::stoi(fields[0]), silhouette_value);
    } catch (const std::exception&) {
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": bad row");
    }
  }
  return rows;
}

}  // namespace mbench
