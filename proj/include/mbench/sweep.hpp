#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbench/grid.hpp"

namespace mbench {

// One observation of the characterization pipeline: the dissimilarity y of
// the reference partition (n, k, h) and its transformed version (t, q),
// scored by measure m.
struct ScoreRecord {
  std::int32_t n = 0;
  std::int32_t k = 0;
  double h = 0.0;
  double q = 0.0;
  Transform transform = Transform::knc;
  Measure measure = Measure::ri;
  double y = 0.0;
  bool out_of_range = false;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

// A grid point that could not be evaluated, with the reason.
struct SweepError {
  std::int32_t n = 0;
  std::int32_t k = 0;
  double h = 0.0;
  double q = 0.0;
  Transform transform = Transform::knc;
  std::string message;
};

struct SweepResult {
  std::vector<ScoreRecord> records;  // ordered by (n, k, h, q, t, m)
  std::vector<SweepError> errors;    // infeasible grid points, excluded from records
};

// Evaluates every grid point. Points are independent work items evaluated in
// parallel (workers <= 0 selects the available hardware parallelism); output
// order and content are identical regardless of worker count. The 1-New-
// Cluster transformation at q = 1 is admitted here so that the factorial
// design stays complete; the resulting pair compares against a single-cluster
// partition.
SweepResult run_sweep(const GridConfig& config, int workers = 0);

// Reference implementation: same per-point evaluation on a plain serial
// loop. run_sweep must produce bit-identical results.
SweepResult run_sweep_serial(const GridConfig& config);

// CSV with header `n,k,h,q,transform,measure,y,out_of_range`; reals carry 12
// significant digits. read_records_csv throws mbench::io_error naming the
// line (and column, for schema violations) on malformed input.
void write_records_csv(const std::vector<ScoreRecord>& records, const std::string& path);
void write_records_csv(const std::vector<ScoreRecord>& records, std::ostream& out);
std::vector<ScoreRecord> read_records_csv(const std::string& path);

void write_sweep_errors_csv(const std::vector<SweepError>& errors, const std::string& path);

// Shared formatting for CSV/CLI output: shortest round-trip-stable decimal
// with 12 significant digits, always containing a '.' or exponent.
std::string format_real(double value);

}  // namespace mbench
