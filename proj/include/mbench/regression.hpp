#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mbench/sweep.hpp"

namespace mbench {

// Terms of the per-cell regression: an intercept, the four centered
// quantitative parameters, and their pairwise products.
enum class Term : std::int8_t { intercept, n, k, q, h, nk, nh, nq, kh, kq, hq };
inline constexpr int kTermCount = 11;
inline constexpr Term kAllTerms[] = {Term::intercept, Term::n, Term::k, Term::q, Term::h,
                                     Term::nk, Term::nh, Term::nq, Term::kh, Term::kq, Term::hq};

std::string term_name(Term t);
Term parse_term(const std::string& name);

// The quantitative parameters a trend can be scanned over.
enum class Parameter : std::int8_t { n, k, h, q };
inline constexpr Parameter kAllParameters[] = {Parameter::n, Parameter::k, Parameter::h,
                                               Parameter::q};
std::string parameter_name(Parameter p);
Parameter parse_parameter(const std::string& name);

// Dummy-variable layout: one block of kTermCount columns per (measure,
// transform) cell, no global intercept. Quantitative variables are centered
// on their whole-table means before products are formed, which makes all
// columns mutually orthogonal on a balanced factorial grid.
struct DesignSpec {
  struct Cell {
    Measure measure;
    Transform transform;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  std::vector<Cell> cells;  // canonical (measure-major, transform-minor) order
  double n_mean = 0.0, k_mean = 0.0, h_mean = 0.0, q_mean = 0.0;

  int cell_index(Measure m, Transform t) const;  // -1 when absent
  int column(int cell, Term term) const { return cell * kTermCount + static_cast<int>(term); }
  int column_count() const { return static_cast<int>(cells.size()) * kTermCount; }
  std::string column_name(int column) const;  // e.g. "RI:onc:kq"
};

// Per-cell slice of the block-diagonal design: rows of one cell only touch
// that cell's columns, so the least-squares problem separates exactly.
struct DesignMatrix {
  DesignSpec spec;
  std::vector<Eigen::MatrixXd> cell_x;  // one (rows_c x kTermCount) block per cell
  std::vector<Eigen::VectorXd> cell_y;
  std::int64_t n_obs = 0;
};

// Groups records into cells and builds the centered term columns. Throws
// std::invalid_argument naming the offending column when a quantitative
// variable is constant within some cell (rank-deficient design).
DesignMatrix build_design_matrix(const std::vector<ScoreRecord>& records);

struct RegressionModel {
  DesignSpec spec;
  Eigen::VectorXd coefficients;   // indexed by DesignSpec::column
  Eigen::MatrixXd covariance;     // sigma^2 (X'X)^-1, block diagonal across cells
  double residual_sigma = 0.0;
  double r_squared = 0.0;         // 1 - SSE/SST, SST about the mean of y
  // Explained variance in the no-global-intercept convention (about zero);
  // this is the quantity the squared standardized coefficients sum to.
  double explained_variance = 0.0;
  std::int64_t n_obs = 0;
  Eigen::VectorXd x_scale;        // per-column root mean square over all rows
  double y_scale = 0.0;
};

// Ordinary least squares on one dense matrix via Householder QR with column
// pivoting (no normal equations). Throws std::invalid_argument on rank
// deficiency.
struct OlsFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;
  double residual_sigma = 0.0;
  double r_squared = 0.0;
  double explained_variance = 0.0;
  std::int64_t n_obs = 0;
};
OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

// Fits each cell block independently (they are orthogonal by construction)
// and pools residuals for the common error scale.
RegressionModel fit_model(const DesignMatrix& design);
RegressionModel fit_model(const std::vector<ScoreRecord>& records);

// beta_j * scale(x_j) / scale(y), scales taken over all rows including the
// structural zeros of the dummy coding. On a balanced grid the squares sum
// to the explained variance.
Eigen::VectorXd standardized_coefficients(const RegressionModel& model);

// Two-sided test of H0: beta_a = beta_b with the statistic
// (b_a - b_b) / sqrt(var_a + var_b - 2 cov_ab) against Student t with
// n_obs - #coefficients degrees of freedom.
double coefficient_difference_test(const RegressionModel& model, int idx_a, int idx_b);

enum class TrendFlag : std::int8_t { none, increasing, decreasing };
std::string trend_name(TrendFlag t);
TrendFlag parse_trend(const std::string& name);

// Raw-data monotonicity over one parameter: increasing means y is
// nondecreasing along the parameter's grid for every fixed setting of the
// other parameters, with a strict increase (> 1e-9) somewhere. Throws
// std::invalid_argument when the slice is not a complete grid.
TrendFlag monotonicity_scan(const std::vector<ScoreRecord>& records, Measure measure,
                            Transform transform, Parameter parameter);

// Squared standardized coefficients per cell plus the per-parameter trend
// flags; the unit the reports and the typology consume.
struct ImportanceTable {
  struct Cell {
    Measure measure;
    Transform transform;
    std::array<double, kTermCount> beta;
    std::array<double, kTermCount> beta_std;
    std::array<double, kTermCount> importance;  // beta_std^2
    std::array<TrendFlag, 4> trend;             // indexed by Parameter
  };
  std::vector<Cell> cells;  // same order as DesignSpec::cells

  const Cell& cell(Measure m, Transform t) const;
};

// Importance values from the fitted model; trend flags are all `none` until
// filled by scan_trends.
ImportanceTable relative_importance(const RegressionModel& model);
void scan_trends(ImportanceTable& table, const std::vector<ScoreRecord>& records);

// CSV: `measure,transform,term,beta,beta_std,importance,importance_sqrt`.
void write_importance_csv(const ImportanceTable& table, const std::string& path);
ImportanceTable read_importance_csv(const std::string& path);

// CSV: `measure,transform,parameter,trend`.
void write_trends_csv(const ImportanceTable& table, const std::string& path);
void read_trends_csv(ImportanceTable& table, const std::string& path);

// Pairwise coefficient-difference tests for the two export families: for
// each measure, all transformation pairs, and for each transformation, all
// measure pairs, over the four main-effect terms.
struct SignificanceRow {
  std::string family;     // "per_measure" or "per_transform"
  std::string fixed_key;  // measure or transformation name
  Parameter param_set = Parameter::n;
  std::string item_a;
  std::string item_b;
  double p_value = 1.0;
  bool significant = false;
};
std::vector<SignificanceRow> significance_matrices(const RegressionModel& model, double alpha);

// CSV: `family,fixed_key,param_set,item_a,item_b,p_value,significant`.
void write_significance_csv(const std::vector<SignificanceRow>& rows, const std::string& path);
std::vector<SignificanceRow> read_significance_csv(const std::string& path);

}  // namespace mbench
