#include "mbench/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mbench/errors.hpp"

namespace mbench {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  // keep reals visibly real: `0` -> `0.0`
  if (!std::strpbrk(buf, ".eEn")) std::strcat(buf, ".0");
  return std::string(buf);
}

namespace {

struct GridPoint {
  std::int32_t n;
  std::int32_t k;
  double h;
  double q;
  Transform transform;
};

std::vector<GridPoint> expand_grid(const GridConfig& config) {
  std::vector<GridPoint> points;
  points.reserve(static_cast<std::size_t>(config.pair_count()));
  for (std::int32_t n : config.n_values)
    for (std::int32_t k : config.k_values)
      for (double h : config.h_values)
        for (double q : config.q_values)
          for (Transform t : config.transforms) points.push_back({n, k, h, q, t});
  return points;
}

struct PointOutcome {
  std::vector<MeasureScore> scores;  // empty on error
  std::string error;
};

PointOutcome evaluate_point(const GridPoint& point, const GridConfig& config) {
  PointOutcome outcome;
  try {
    const ClusterSizeSpec sizes = cluster_sizes(point.n, point.k, point.h);
    const Partition reference = build_reference_partition(sizes);
    TransformSpec spec{point.transform, Fraction::from_decimal(point.q)};
    TransformOptions options;
    options.allow_full_intensity_onc = true;  // keep the factorial design complete
    const Partition transformed = apply_transform(reference, spec, options);
    outcome.scores = score_pair(reference, transformed, config.measures);
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

SweepResult collect(const GridConfig& config, const std::vector<GridPoint>& points,
                    std::vector<PointOutcome>& outcomes) {
  SweepResult result;
  result.records.reserve(static_cast<std::size_t>(config.record_count()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GridPoint& point = points[i];
    PointOutcome& outcome = outcomes[i];
    if (!outcome.error.empty()) {
      result.errors.push_back({point.n, point.k, point.h, point.q, point.transform,
                               std::move(outcome.error)});
      continue;
    }
    for (const MeasureScore& score : outcome.scores)
      result.records.push_back({point.n, point.k, point.h, point.q, point.transform, score.kind,
                                score.dissimilarity, score.out_of_range});
  }
  return result;
}

}  // namespace

SweepResult run_sweep(const GridConfig& config, int workers) {
  config.validate();
  const std::vector<GridPoint> points = expand_grid(config);
  std::vector<PointOutcome> outcomes(points.size());
  if (workers <= 0) workers = omp_get_max_threads();

  // independent work items; slot-indexed writes keep the result identical
  // for any worker count and schedule
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i)
    outcomes[static_cast<std::size_t>(i)] =
        evaluate_point(points[static_cast<std::size_t>(i)], config);

  return collect(config, points, outcomes);
}

SweepResult run_sweep_serial(const GridConfig& config) {
  config.validate();
  const std::vector<GridPoint> points = expand_grid(config);
  std::vector<PointOutcome> outcomes(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) outcomes[i] = evaluate_point(points[i], config);
  return collect(config, points, outcomes);
}

namespace {

constexpr const char* kRecordsHeader = "n,k,h,q,transform,measure,y,out_of_range";

std::vector<std::string> split_csv_line(const std::string& line) {
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

double parse_double(const std::string& s, int lineno, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw io_error("records csv line " + std::to_string(lineno) + ": bad value '" + s +
                   "' in column " + column);
  return value;
}

std::int32_t parse_int(const std::string& s, int lineno, const char* column) {
  std::int32_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw io_error("records csv line " + std::to_string(lineno) + ": bad value '" + s +
                   "' in column " + column);
  return value;
}

bool parse_bool(const std::string& s, int lineno, const char* column) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw io_error("records csv line " + std::to_string(lineno) + ": bad value '" + s +
                 "' in column " + column);
}

}  // namespace

void write_records_csv(const std::vector<ScoreRecord>& records, std::ostream& out) {
  out << kRecordsHeader << "\n";
  for (const ScoreRecord& r : records) {
    out << r.n << ',' << r.k << ',' << format_real(r.h) << ',' << format_real(r.q) << ','
        << transform_name(r.transform) << ',' << measure_name(r.measure) << ','
        << format_real(r.y) << ',' << (r.out_of_range ? "true" : "false") << "\n";
  }
}

void write_records_csv(const std::vector<ScoreRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_records_csv(records, out);
  if (!out) throw io_error("failed writing '" + path + "'");
}

std::vector<ScoreRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open records csv '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error("records csv '" + path + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    const auto have = split_csv_line(line);
    const auto want = split_csv_line(kRecordsHeader);
    for (const auto& column : want)
      if (std::find(have.begin(), have.end(), column) == have.end())
        throw io_error("records csv '" + path + "': missing column '" + column + "'");
    if (have != want)
      throw io_error("records csv '" + path + "': header must be `" + kRecordsHeader + "`");
  }
  std::vector<ScoreRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8)
      throw io_error("records csv line " + std::to_string(lineno) + ": expected 8 fields, got " +
                     std::to_string(fields.size()));
    ScoreRecord r;
    r.n = parse_int(fields[0], lineno, "n");
    r.k = parse_int(fields[1], lineno, "k");
    r.h = parse_double(fields[2], lineno, "h");
    r.q = parse_double(fields[3], lineno, "q");
    try {
      r.transform = parse_transform(fields[4]);
      r.measure = parse_measure(fields[5]);
    } catch (const std::invalid_argument& e) {
      throw io_error("records csv line " + std::to_string(lineno) + ": " + e.what());
    }
    r.y = parse_double(fields[6], lineno, "y");
    r.out_of_range = parse_bool(fields[7], lineno, "out_of_range");
    records.push_back(r);
  }
  return records;
}

void write_sweep_errors_csv(const std::vector<SweepError>& errors, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "n,k,h,q,transform,error\n";
  for (const SweepError& e : errors)
    out << e.n << ',' << e.k << ',' << format_real(e.h) << ',' << format_real(e.q) << ','
        << transform_name(e.transform) << ',' << '"' << e.message << '"' << "\n";
}

}  // namespace mbench
