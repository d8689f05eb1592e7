#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbench/regression.hpp"
#include "mbench/typology.hpp"

namespace mbench {

// All emitters render deterministic SVG: identical inputs give identical
// bytes, and every number shown comes from the tables as exported.

// One panel per measure, one stacked bar per transformation. Segment heights
// are the square roots of the term importances, stacked in term order with
// the intercept omitted; trend triangles mark parameters whose monotonicity
// flag is set.
void emit_importance_bars(const ImportanceTable& table, const std::string& path);

// Dissimilarity against one parameter for a fixed transformation. Every
// parameter that is neither on the x-axis nor fixed becomes the line family:
// with several measures none may be free (one line per measure); with a
// single measure exactly one may be free (one line per value). Throws
// std::invalid_argument listing missing grid points when the slice is
// incomplete.
struct ScoreLinesRequest {
  std::vector<Measure> measures;
  Transform transform = Transform::knc;
  Parameter x_param = Parameter::q;
  std::optional<std::int32_t> fixed_n;
  std::optional<std::int32_t> fixed_k;
  std::optional<double> fixed_h;
  std::optional<double> fixed_q;
};
void emit_score_lines(const std::vector<ScoreRecord>& records, const ScoreLinesRequest& request,
                      const std::string& path);

// Grids of pairwise significance decisions, green for significant and red
// for not; one block per (fixed key, parameter) for both export families.
void emit_significance_matrices(const std::vector<SignificanceRow>& rows,
                                const std::string& path);
void emit_significance_matrices(const RegressionModel& model, double alpha,
                                const std::string& path);

// The measures-by-transformations grid colored by cluster id, medoid cells
// marked.
void emit_typology_table(const TypologyResult& result, const std::string& path);
void emit_typology_table(const std::vector<TypologyRow>& rows, const std::string& path);

}  // namespace mbench
