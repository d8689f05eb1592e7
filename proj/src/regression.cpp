#include "mbench/regression.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mbench/errors.hpp"

namespace mbench {

std::string term_name(Term t) {
  switch (t) {
    case Term::intercept: return "intercept";
    case Term::n: return "n";
    case Term::k: return "k";
    case Term::q: return "q";
    case Term::h: return "h";
    case Term::nk: return "nk";
    case Term::nh: return "nh";
    case Term::nq: return "nq";
    case Term::kh: return "kh";
    case Term::kq: return "kq";
    case Term::hq: return "hq";
  }
  throw std::invalid_argument("term_name: bad enum value");
}

Term parse_term(const std::string& name) {
  for (Term t : kAllTerms)
    if (term_name(t) == name) return t;
  throw std::invalid_argument("unknown regression term '" + name + "'");
}

std::string parameter_name(Parameter p) {
  switch (p) {
    case Parameter::n: return "n";
    case Parameter::k: return "k";
    case Parameter::h: return "h";
    case Parameter::q: return "q";
  }
  throw std::invalid_argument("parameter_name: bad enum value");
}

Parameter parse_parameter(const std::string& name) {
  for (Parameter p : kAllParameters)
    if (parameter_name(p) == name) return p;
  throw std::invalid_argument("unknown parameter '" + name + "' (expected n, k, h or q)");
}

std::string trend_name(TrendFlag t) {
  switch (t) {
    case TrendFlag::none: return "none";
    case TrendFlag::increasing: return "increasing";
    case TrendFlag::decreasing: return "decreasing";
  }
  throw std::invalid_argument("trend_name: bad enum value");
}

TrendFlag parse_trend(const std::string& name) {
  if (name == "none") return TrendFlag::none;
  if (name == "increasing") return TrendFlag::increasing;
  if (name == "decreasing") return TrendFlag::decreasing;
  throw std::invalid_argument("unknown trend '" + name + "'");
}

int DesignSpec::cell_index(Measure m, Transform t) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].measure == m && cells[i].transform == t) return static_cast<int>(i);
  return -1;
}

std::string DesignSpec::column_name(int column) const {
  const int cell = column / kTermCount;
  const Term term = static_cast<Term>(column % kTermCount);
  return measure_name(cells[static_cast<std::size_t>(cell)].measure) + ":" +
         transform_name(cells[static_cast<std::size_t>(cell)].transform) + ":" + term_name(term);
}

DesignMatrix build_design_matrix(const std::vector<ScoreRecord>& records) {
  if (records.empty()) throw std::invalid_argument("build_design_matrix: no records");

  DesignMatrix design;
  double n_sum = 0, k_sum = 0, h_sum = 0, q_sum = 0;
  for (const ScoreRecord& r : records) {
    n_sum += r.n;
    k_sum += r.k;
    h_sum += r.h;
    q_sum += r.q;
  }
  const double count = static_cast<double>(records.size());
  design.spec.n_mean = n_sum / count;
  design.spec.k_mean = k_sum / count;
  design.spec.h_mean = h_sum / count;
  design.spec.q_mean = q_sum / count;
  design.n_obs = static_cast<std::int64_t>(records.size());

  // canonical cell order: measure-major, transform-minor, present cells only
  std::vector<std::vector<std::size_t>> cell_rows;
  for (Measure m : kAllMeasures) {
    for (Transform t : kAllTransforms) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].measure == m && records[i].transform == t) rows.push_back(i);
      if (!rows.empty()) {
        design.spec.cells.push_back({m, t});
        cell_rows.push_back(std::move(rows));
      }
    }
  }

  for (std::size_t c = 0; c < design.spec.cells.size(); ++c) {
    const auto& rows = cell_rows[c];
    const std::string cell_name = measure_name(design.spec.cells[c].measure) + ":" +
                                  transform_name(design.spec.cells[c].transform);
    // a quantitative variable constant within a cell zeroes its column
    std::array<const char*, 4> names = {"n", "k", "q", "h"};
    std::array<bool, 4> varies = {false, false, false, false};
    for (const std::size_t i : rows) {
      const ScoreRecord& first = records[rows.front()];
      const ScoreRecord& r = records[i];
      if (r.n != first.n) varies[0] = true;
      if (r.k != first.k) varies[1] = true;
      if (r.q != first.q) varies[2] = true;
      if (r.h != first.h) varies[3] = true;
    }
    for (std::size_t v = 0; v < 4; ++v)
      if (!varies[v])
        throw std::invalid_argument("build_design_matrix: rank-deficient design, column " +
                                    cell_name + ":" + names[v] + " is constant");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), kTermCount);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ScoreRecord& r = records[rows[i]];
      const double nc = r.n - design.spec.n_mean;
      const double kc = r.k - design.spec.k_mean;
      const double hc = r.h - design.spec.h_mean;
      const double qc = r.q - design.spec.q_mean;
      const Eigen::Index row = static_cast<Eigen::Index>(i);
      x(row, 0) = 1.0;
      x(row, 1) = nc;
      x(row, 2) = kc;
      x(row, 3) = qc;
      x(row, 4) = hc;
      x(row, 5) = nc * kc;
      x(row, 6) = nc * hc;
      x(row, 7) = nc * qc;
      x(row, 8) = kc * hc;
      x(row, 9) = kc * qc;
      x(row, 10) = hc * qc;
      y(row) = r.y;
    }
    design.cell_x.push_back(std::move(x));
    design.cell_y.push_back(std::move(y));
  }
  return design;
}

namespace {

struct BlockFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd xtx_inv;
  double sse = 0.0;
};

BlockFit solve_block(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() <= x.cols())
    throw std::invalid_argument("fit: need more observations than coefficients");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < x.cols()) {
    const auto perm = qr.colsPermutation().indices();
    throw std::invalid_argument("fit: rank-deficient design matrix (dependent column " +
                                std::to_string(perm(qr.rank())) + ")");
  }
  BlockFit fit;
  fit.beta = qr.solve(y);
  const Eigen::MatrixXd r =
      qr.matrixR().topLeftCorner(x.cols(), x.cols()).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
  const Eigen::MatrixXd unpermuted = r_inv * r_inv.transpose();
  fit.xtx_inv = qr.colsPermutation() * unpermuted * qr.colsPermutation().transpose();
  fit.sse = (y - x * fit.beta).squaredNorm();
  return fit;
}

}  // namespace

OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw std::invalid_argument("fit_ols: row count mismatch");
  BlockFit block = solve_block(x, y);
  OlsFit fit;
  fit.beta = std::move(block.beta);
  fit.n_obs = x.rows();
  const double dof = static_cast<double>(x.rows() - x.cols());
  const double sigma2 = block.sse / dof;
  fit.residual_sigma = std::sqrt(sigma2);
  fit.covariance = sigma2 * block.xtx_inv;
  const double mean = y.mean();
  const double sst = (y.array() - mean).square().sum();
  const double sst0 = y.squaredNorm();
  fit.r_squared = sst > 0.0 ? 1.0 - block.sse / sst : (block.sse == 0.0 ? 1.0 : 0.0);
  fit.explained_variance = sst0 > 0.0 ? 1.0 - block.sse / sst0 : 1.0;
  return fit;
}

RegressionModel fit_model(const DesignMatrix& design) {
  const std::size_t ncells = design.spec.cells.size();
  const int ncols = design.spec.column_count();
  if (design.n_obs <= ncols)
    throw std::invalid_argument("fit_model: need more observations than coefficients");

  std::vector<BlockFit> fits(ncells);
  std::vector<std::string> failures(ncells);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(ncells); ++c) {
    try {
      fits[static_cast<std::size_t>(c)] = solve_block(design.cell_x[static_cast<std::size_t>(c)],
                                                      design.cell_y[static_cast<std::size_t>(c)]);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(c)] = e.what();
    }
  }
  for (std::size_t c = 0; c < ncells; ++c)
    if (!failures[c].empty())
      throw std::invalid_argument("cell " + measure_name(design.spec.cells[c].measure) + ":" +
                                  transform_name(design.spec.cells[c].transform) + ": " +
                                  failures[c]);

  RegressionModel model;
  model.spec = design.spec;
  model.n_obs = design.n_obs;
  model.coefficients.resize(ncols);
  model.covariance = Eigen::MatrixXd::Zero(ncols, ncols);
  model.x_scale.resize(ncols);

  double sse = 0.0, y_sum = 0.0, y_sq = 0.0;
  for (std::size_t c = 0; c < ncells; ++c) {
    sse += fits[c].sse;
    y_sum += design.cell_y[c].sum();
    y_sq += design.cell_y[c].squaredNorm();
  }
  const double nobs = static_cast<double>(design.n_obs);
  const double sigma2 = sse / (nobs - ncols);
  model.residual_sigma = std::sqrt(sigma2);
  const double sst = y_sq - y_sum * y_sum / nobs;
  model.r_squared = sst > 0.0 ? 1.0 - sse / sst : (sse == 0.0 ? 1.0 : 0.0);
  model.explained_variance = y_sq > 0.0 ? 1.0 - sse / y_sq : 1.0;
  model.y_scale = std::sqrt(y_sq / (nobs - 1.0));

  for (std::size_t c = 0; c < ncells; ++c) {
    const int base = static_cast<int>(c) * kTermCount;
    model.coefficients.segment(base, kTermCount) = fits[c].beta;
    model.covariance.block(base, base, kTermCount, kTermCount) = sigma2 * fits[c].xtx_inv;
    for (int t = 0; t < kTermCount; ++t)
      model.x_scale(base + t) =
          std::sqrt(design.cell_x[c].col(t).squaredNorm() / (nobs - 1.0));
  }
  return model;
}

RegressionModel fit_model(const std::vector<ScoreRecord>& records) {
  return fit_model(build_design_matrix(records));
}

Eigen::VectorXd standardized_coefficients(const RegressionModel& model) {
  if (!(model.y_scale > 0.0))
    throw std::invalid_argument("standardized_coefficients: zero variance in y");
  return model.coefficients.cwiseProduct(model.x_scale) / model.y_scale;
}

double coefficient_difference_test(const RegressionModel& model, int idx_a, int idx_b) {
  const int ncols = static_cast<int>(model.coefficients.size());
  if (idx_a < 0 || idx_b < 0 || idx_a >= ncols || idx_b >= ncols)
    throw std::invalid_argument("coefficient_difference_test: index out of range");
  if (idx_a == idx_b) return 1.0;
  const double var = model.covariance(idx_a, idx_a) + model.covariance(idx_b, idx_b) -
                     2.0 * model.covariance(idx_a, idx_b);
  if (!(var > 0.0))
    throw std::domain_error("coefficient_difference_test: nonpositive variance of the difference");
  const double t = (model.coefficients(idx_a) - model.coefficients(idx_b)) / std::sqrt(var);
  const double dof = static_cast<double>(model.n_obs - ncols);
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

TrendFlag monotonicity_scan(const std::vector<ScoreRecord>& records, Measure measure,
                            Transform transform, Parameter parameter) {
  // group the slice by the three parameters not being scanned
  std::map<std::array<double, 3>, std::vector<std::pair<double, double>>> groups;
  std::vector<double> values;
  for (const ScoreRecord& r : records) {
    if (r.measure != measure || r.transform != transform) continue;
    double scanned = 0.0;
    std::array<double, 3> key{};
    switch (parameter) {
      case Parameter::n: scanned = r.n; key = {static_cast<double>(r.k), r.h, r.q}; break;
      case Parameter::k: scanned = r.k; key = {static_cast<double>(r.n), r.h, r.q}; break;
      case Parameter::h: scanned = r.h; key = {static_cast<double>(r.n), static_cast<double>(r.k), r.q}; break;
      case Parameter::q: scanned = r.q; key = {static_cast<double>(r.n), static_cast<double>(r.k), r.h}; break;
    }
    groups[key].emplace_back(scanned, r.y);
    values.push_back(scanned);
  }
  if (groups.empty())
    throw std::invalid_argument("monotonicity_scan: no records for " + measure_name(measure) +
                                ":" + transform_name(transform));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  constexpr double kStrict = 1e-9;
  bool can_increase = true, can_decrease = true, any_up = false, any_down = false;
  for (auto& [key, points] : groups) {
    std::sort(points.begin(), points.end());
    if (points.size() != values.size())
      throw std::invalid_argument("monotonicity_scan: incomplete grid for " +
                                  measure_name(measure) + ":" + transform_name(transform) +
                                  " over " + parameter_name(parameter));
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].first != values[i])
        throw std::invalid_argument("monotonicity_scan: ragged grid for " +
                                    measure_name(measure) + ":" + transform_name(transform));
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double d = points[i].second - points[i - 1].second;
      if (d < -kStrict) can_increase = false;
      if (d > kStrict) can_decrease = false;
      if (d > kStrict) any_up = true;
      if (d < -kStrict) any_down = true;
    }
  }
  if (can_increase && any_up) return TrendFlag::increasing;
  if (can_decrease && any_down) return TrendFlag::decreasing;
  return TrendFlag::none;
}

const ImportanceTable::Cell& ImportanceTable::cell(Measure m, Transform t) const {
  for (const Cell& c : cells)
    if (c.measure == m && c.transform == t) return c;
  throw std::invalid_argument("importance table: no cell " + measure_name(m) + ":" +
                              transform_name(t));
}

ImportanceTable relative_importance(const RegressionModel& model) {
  const Eigen::VectorXd beta_std = standardized_coefficients(model);
  ImportanceTable table;
  table.cells.reserve(model.spec.cells.size());
  for (std::size_t c = 0; c < model.spec.cells.size(); ++c) {
    ImportanceTable::Cell cell;
    cell.measure = model.spec.cells[c].measure;
    cell.transform = model.spec.cells[c].transform;
    for (int t = 0; t < kTermCount; ++t) {
      const int col = static_cast<int>(c) * kTermCount + t;
      cell.beta[static_cast<std::size_t>(t)] = model.coefficients(col);
      cell.beta_std[static_cast<std::size_t>(t)] = beta_std(col);
      cell.importance[static_cast<std::size_t>(t)] = beta_std(col) * beta_std(col);
    }
    cell.trend.fill(TrendFlag::none);
    table.cells.push_back(cell);
  }
  return table;
}

void scan_trends(ImportanceTable& table, const std::vector<ScoreRecord>& records) {
  for (ImportanceTable::Cell& cell : table.cells)
    for (Parameter p : kAllParameters)
      cell.trend[static_cast<std::size_t>(p)] =
          monotonicity_scan(records, cell.measure, cell.transform, p);
}

std::vector<SignificanceRow> significance_matrices(const RegressionModel& model, double alpha) {
  std::vector<Measure> measures;
  std::vector<Transform> transforms;
  for (Measure m : kAllMeasures)
    if (std::any_of(model.spec.cells.begin(), model.spec.cells.end(),
                    [&](const auto& c) { return c.measure == m; }))
      measures.push_back(m);
  for (Transform t : kAllTransforms)
    if (std::any_of(model.spec.cells.begin(), model.spec.cells.end(),
                    [&](const auto& c) { return c.transform == t; }))
      transforms.push_back(t);

  auto param_term = [](Parameter p) {
    switch (p) {
      case Parameter::n: return Term::n;
      case Parameter::k: return Term::k;
      case Parameter::h: return Term::h;
      case Parameter::q: return Term::q;
    }
    throw std::invalid_argument("bad parameter");
  };

  std::vector<SignificanceRow> rows;
  for (Measure m : measures) {
    for (Parameter p : kAllParameters) {
      for (std::size_t a = 0; a < transforms.size(); ++a) {
        for (std::size_t b = a + 1; b < transforms.size(); ++b) {
          const int ca = model.spec.cell_index(m, transforms[a]);
          const int cb = model.spec.cell_index(m, transforms[b]);
          if (ca < 0 || cb < 0) continue;
          SignificanceRow row;
          row.family = "per_measure";
          row.fixed_key = measure_name(m);
          row.param_set = p;
          row.item_a = transform_name(transforms[a]);
          row.item_b = transform_name(transforms[b]);
          row.p_value = coefficient_difference_test(model, model.spec.column(ca, param_term(p)),
                                                    model.spec.column(cb, param_term(p)));
          row.significant = row.p_value < alpha;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  for (Transform t : transforms) {
    for (Parameter p : kAllParameters) {
      for (std::size_t a = 0; a < measures.size(); ++a) {
        for (std::size_t b = a + 1; b < measures.size(); ++b) {
          const int ca = model.spec.cell_index(measures[a], t);
          const int cb = model.spec.cell_index(measures[b], t);
          if (ca < 0 || cb < 0) continue;
          SignificanceRow row;
          row.family = "per_transform";
          row.fixed_key = transform_name(t);
          row.param_set = p;
          row.item_a = measure_name(measures[a]);
          row.item_b = measure_name(measures[b]);
          row.p_value = coefficient_difference_test(model, model.spec.column(ca, param_term(p)),
                                                    model.spec.column(cb, param_term(p)));
          row.significant = row.p_value < alpha;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

// ---- CSV ------------------------------------------------------------------

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

std::ifstream open_csv(const std::string& path, const char* header) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open csv '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error("csv '" + path + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto have = split_line(line);
  const auto want = split_line(header);
  for (const auto& column : want)
    if (std::find(have.begin(), have.end(), column) == have.end())
      throw io_error("csv '" + path + "': missing column '" + column + "'");
  if (have != want) throw io_error("csv '" + path + "': header must be `" + std::string(header) + "`");
  return in;
}

double parse_real(const std::string& s, const std::string& path, int lineno) {
  // from_chars instead of stod: p-values can be subnormal, which stod
  // reports as out-of-range
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if ((ec != std::errc() && ec != std::errc::result_out_of_range) || ptr != s.data() + s.size())
    throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": bad number '" + s + "'");
  return value;
}

}  // namespace

void write_importance_csv(const ImportanceTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "measure,transform,term,beta,beta_std,importance,importance_sqrt\n";
  for (const auto& cell : table.cells) {
    for (Term t : kAllTerms) {
      const std::size_t i = static_cast<std::size_t>(t);
      out << measure_name(cell.measure) << ',' << transform_name(cell.transform) << ','
          << term_name(t) << ',' << format_real(cell.beta[i]) << ','
          << format_real(cell.beta_std[i]) << ',' << format_real(cell.importance[i]) << ','
          << format_real(std::sqrt(cell.importance[i])) << "\n";
    }
  }
}

ImportanceTable read_importance_csv(const std::string& path) {
  auto in = open_csv(path, "measure,transform,term,beta,beta_std,importance,importance_sqrt");
  ImportanceTable table;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 7)
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": expected 7 fields");
    Measure m;
    Transform t;
    Term term;
    try {
      m = parse_measure(fields[0]);
      t = parse_transform(fields[1]);
      term = parse_term(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
    }
    auto it = std::find_if(table.cells.begin(), table.cells.end(),
                           [&](const auto& c) { return c.measure == m && c.transform == t; });
    if (it == table.cells.end()) {
      ImportanceTable::Cell cell;
      cell.measure = m;
      cell.transform = t;
      cell.beta.fill(0.0);
      cell.beta_std.fill(0.0);
      cell.importance.fill(0.0);
      cell.trend.fill(TrendFlag::none);
      table.cells.push_back(cell);
      it = std::prev(table.cells.end());
    }
    const std::size_t i = static_cast<std::size_t>(term);
    it->beta[i] = parse_real(fields[3], path, lineno);
    it->beta_std[i] = parse_real(fields[4], path, lineno);
    it->importance[i] = parse_real(fields[5], path, lineno);
  }
  if (table.cells.empty()) throw io_error("csv '" + path + "': no importance rows");
  return table;
}

void write_trends_csv(const ImportanceTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "measure,transform,parameter,trend\n";
  for (const auto& cell : table.cells)
    for (Parameter p : kAllParameters)
      out << measure_name(cell.measure) << ',' << transform_name(cell.transform) << ','
          << parameter_name(p) << ',' << trend_name(cell.trend[static_cast<std::size_t>(p)])
          << "\n";
}

void read_trends_csv(ImportanceTable& table, const std::string& path) {
  auto in = open_csv(path, "measure,transform,parameter,trend");
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 4)
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": expected 4 fields");
    try {
      const Measure m = parse_measure(fields[0]);
      const Transform t = parse_transform(fields[1]);
      const Parameter p = parse_parameter(fields[2]);
      auto it = std::find_if(table.cells.begin(), table.cells.end(),
                             [&](const auto& c) { return c.measure == m && c.transform == t; });
      if (it == table.cells.end()) continue;  // trend for a cell not in the table
      it->trend[static_cast<std::size_t>(p)] = parse_trend(fields[3]);
    } catch (const std::invalid_argument& e) {
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void write_significance_csv(const std::vector<SignificanceRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "family,fixed_key,param_set,item_a,item_b,p_value,significant\n";
  for (const SignificanceRow& r : rows)
    out << r.family << ',' << r.fixed_key << ',' << parameter_name(r.param_set) << ',' << r.item_a
        << ',' << r.item_b << ',' << format_real(r.p_value) << ','
        << (r.significant ? "true" : "false") << "\n";
}

std::vector<SignificanceRow> read_significance_csv(const std::string& path) {
  auto in = open_csv(path, "family,fixed_key,param_set,item_a,item_b,p_value,significant");
  std::vector<SignificanceRow> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 7)
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": expected 7 fields");
    SignificanceRow r;
    r.family = fields[0];
    r.fixed_key = fields[1];
    try {
      r.param_set = parse_parameter(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
    }
    r.item_a = fields[3];
    r.item_b = fields[4];
    r.p_value = parse_real(fields[5], path, lineno);
    if (fields[6] == "true") r.significant = true;
    else if (fields[6] == "false") r.significant = false;
    else throw io_error("csv '" + path + "' line " + std::to_string(lineno) + ": bad flag '" + fields[6] + "'");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mbench
