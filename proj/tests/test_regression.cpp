#include <doctest.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "mbench/errors.hpp"
#include "mbench/regression.hpp"

using namespace mbench;

namespace {

using CellFn = std::function<double(Measure, Transform, double nc, double kc, double hc, double qc)>;

// full factorial records over the given cells; the value function sees
// centered parameters
std::vector<ScoreRecord> make_records(const std::vector<std::pair<Measure, Transform>>& cells,
                                      const std::vector<std::int32_t>& n_vals,
                                      const std::vector<std::int32_t>& k_vals,
                                      const std::vector<double>& h_vals,
                                      const std::vector<double>& q_vals, const CellFn& fn) {
  double n_mean = 0, k_mean = 0, h_mean = 0, q_mean = 0;
  for (auto v : n_vals) n_mean += v;
  for (auto v : k_vals) k_mean += v;
  for (auto v : h_vals) h_mean += v;
  for (auto v : q_vals) q_mean += v;
  n_mean /= static_cast<double>(n_vals.size());
  k_mean /= static_cast<double>(k_vals.size());
  h_mean /= static_cast<double>(h_vals.size());
  q_mean /= static_cast<double>(q_vals.size());

  std::vector<ScoreRecord> records;
  for (std::int32_t n : n_vals)
    for (std::int32_t k : k_vals)
      for (double h : h_vals)
        for (double q : q_vals)
          for (const auto& [m, t] : cells)
            records.push_back({n, k, h, q, t, m,
                               fn(m, t, n - n_mean, k - k_mean, h - h_mean, q - q_mean), false});
  return records;
}

const std::vector<std::int32_t> kN{10, 20, 30};
const std::vector<std::int32_t> kK{2, 3, 4};
const std::vector<double> kH{0.0, 0.3, 0.6};
const std::vector<double> kQ{0.2, 0.5, 0.8};

}  // namespace

TEST_SUITE_BEGIN("regression");

TEST_CASE("fit_ols recovers an exact line") {
  Eigen::MatrixXd x(20, 2);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = i;
    y(i) = 2.0 * i + 1.0;
  }
  const OlsFit fit = fit_ols(x, y);
  CHECK(fit.beta(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.beta(1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.residual_sigma == doctest::Approx(0.0));
}

TEST_CASE("fit_ols on pure noise explains nothing") {
  std::mt19937 rng(1111);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = 100000;
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = noise(rng);
    y(i) = noise(rng);
  }
  const OlsFit fit = fit_ols(x, y);
  CHECK(fit.r_squared < 0.01);
  CHECK(std::abs(fit.beta(1)) < 0.05);
}

TEST_CASE("fit_ols rejects rank-deficient designs") {
  Eigen::MatrixXd x(10, 3);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = i;
    x(i, 2) = i;  // duplicate
    y(i) = i;
  }
  CHECK_THROWS_AS(fit_ols(x, y), std::invalid_argument);
}

TEST_CASE("design matrix centers and blocks by cell") {
  const auto records = make_records({{Measure::ri, Transform::ncs}, {Measure::ari, Transform::sc}},
                                    kN, kK, kH, kQ,
                                    [](Measure, Transform, double, double, double, double qc) {
                                      return 0.5 + qc;
                                    });
  const DesignMatrix design = build_design_matrix(records);
  REQUIRE(design.spec.cells.size() == 2);
  CHECK(design.spec.column_count() == 22);
  CHECK(design.n_obs == static_cast<std::int64_t>(records.size()));
  // centered quantitative columns sum to ~0 on the balanced grid
  for (const auto& block : design.cell_x)
    for (int term = 1; term <= 4; ++term)
      CHECK(std::abs(block.col(term).sum()) <= 1e-9 * static_cast<double>(design.n_obs));
  CHECK(design.spec.column_name(3) == "RI:ncs:q");
}

TEST_CASE("a constant variable names its column") {
  const auto records = make_records({{Measure::ri, Transform::ncs}}, kN, kK, {0.4}, kQ,
                                    [](Measure, Transform, double, double, double, double) {
                                      return 0.5;
                                    });
  CHECK_THROWS_WITH_AS(build_design_matrix(records), doctest::Contains("RI:ncs:h"),
                       std::invalid_argument);
}

TEST_CASE("standardized coefficients") {
  // y equals the centered q column of the single cell
  const auto records = make_records({{Measure::ri, Transform::ncs}}, kN, kK, kH, kQ,
                                    [](Measure, Transform, double, double, double, double qc) {
                                      return qc;
                                    });
  const RegressionModel model = fit_model(records);
  const Eigen::VectorXd beta_std = standardized_coefficients(model);
  CHECK(beta_std(static_cast<int>(Term::q)) == doctest::Approx(1.0).epsilon(1e-10));
  for (Term t : kAllTerms)
    if (t != Term::q)
      CHECK(std::abs(beta_std(static_cast<int>(t))) < 1e-10);

  // scaling y leaves the standardized coefficients unchanged
  auto scaled = records;
  for (auto& r : scaled) r.y *= 7.5;
  const Eigen::VectorXd beta_std_scaled = standardized_coefficients(fit_model(scaled));
  for (int i = 0; i < beta_std.size(); ++i)
    CHECK(beta_std_scaled(i) == doctest::Approx(beta_std(i)).epsilon(1e-12));
}

TEST_CASE("squared standardized coefficients decompose the explained variance") {
  std::mt19937 rng(3141);
  std::normal_distribution<double> noise(0.0, 0.2);
  const auto records = make_records(
      {{Measure::ri, Transform::ncs}, {Measure::ri, Transform::sc}, {Measure::ari, Transform::ncs},
       {Measure::ari, Transform::sc}},
      kN, kK, kH, kQ,
      [&](Measure m, Transform t, double nc, double kc, double hc, double qc) {
        return 0.4 + 0.8 * qc + 0.05 * kc + 0.02 * kc * qc + 0.01 * nc * hc * (m == Measure::ri) +
               0.1 * hc * (t == Transform::sc) + noise(rng);
      });
  const RegressionModel model = fit_model(records);
  const Eigen::VectorXd beta_std = standardized_coefficients(model);
  CHECK(std::abs(beta_std.squaredNorm() - model.explained_variance) <= 1e-10);
  CHECK(model.r_squared <= 1.0);
  CHECK(model.r_squared >= 0.0);
}

TEST_CASE("importance localizes to the active term") {
  const auto records = make_records(
      {{Measure::ri, Transform::ncs}, {Measure::nmi, Transform::oc}}, kN, kK, kH, kQ,
      [](Measure m, Transform, double, double, double, double qc) {
        return m == Measure::ri ? 2.0 * qc : 0.25;
      });
  const RegressionModel model = fit_model(records);
  const ImportanceTable table = relative_importance(model);
  const auto& active = table.cell(Measure::ri, Transform::ncs);
  const auto& inert = table.cell(Measure::nmi, Transform::oc);
  CHECK(active.importance[static_cast<std::size_t>(Term::q)] > 0.5);
  for (Term t : kAllTerms) {
    if (t != Term::q) CHECK(active.importance[static_cast<std::size_t>(t)] < 1e-6);
    if (t != Term::intercept) CHECK(inert.importance[static_cast<std::size_t>(t)] < 1e-6);
  }
}

TEST_CASE("refit on a permuted table is identical") {
  std::mt19937 rng(999);
  std::normal_distribution<double> noise(0.0, 0.1);
  auto records = make_records({{Measure::ri, Transform::ncs}, {Measure::ji, Transform::knc}},
                              kN, kK, kH, kQ,
                              [&](Measure, Transform, double, double kc, double, double qc) {
                                return 0.3 * qc - 0.1 * kc + noise(rng);
                              });
  const RegressionModel model = fit_model(records);
  std::shuffle(records.begin(), records.end(), rng);
  const RegressionModel permuted = fit_model(records);
  for (int i = 0; i < model.coefficients.size(); ++i)
    CHECK(permuted.coefficients(i) == doctest::Approx(model.coefficients(i)).epsilon(1e-10));
}

TEST_CASE("coefficient difference test") {
  std::mt19937 rng(777);
  std::normal_distribution<double> noise(0.0, 0.05);
  const std::vector<std::int32_t> wide_n{10, 20, 30, 40};
  const std::vector<std::int32_t> wide_k{2, 3, 4, 5};
  const std::vector<double> wide_h{0.0, 0.2, 0.4, 0.6};
  const std::vector<double> wide_q{0.2, 0.4, 0.6, 0.8};
  const auto records = make_records(
      {{Measure::ri, Transform::ncs}, {Measure::ari, Transform::ncs}}, wide_n, wide_k, wide_h,
      wide_q,
      [&](Measure m, Transform, double, double, double, double qc) {
        return (m == Measure::ri ? 1.0 : 0.0) * qc + noise(rng);
      });
  const RegressionModel model = fit_model(records);
  const int cell_a = model.spec.cell_index(Measure::ri, Transform::ncs);
  const int cell_b = model.spec.cell_index(Measure::ari, Transform::ncs);
  const int qa = model.spec.column(cell_a, Term::q);
  const int qb = model.spec.column(cell_b, Term::q);

  CHECK(coefficient_difference_test(model, qa, qa) == 1.0);
  CHECK(coefficient_difference_test(model, qa, qb) < 1e-3);
  // the h coefficients are both zero; their difference is not significant
  CHECK(coefficient_difference_test(model, model.spec.column(cell_a, Term::h),
                                    model.spec.column(cell_b, Term::h)) > 0.01);
  CHECK_THROWS_AS(coefficient_difference_test(model, -1, 0), std::invalid_argument);

  RegressionModel degenerate = model;
  degenerate.covariance.setConstant(1.0);  // perfectly correlated estimates
  CHECK_THROWS_AS(coefficient_difference_test(degenerate, qa, qb), std::domain_error);
}

TEST_CASE("difference test p-values are uniform under equal coefficients") {
  // exact t statistics under gaussian noise; Kolmogorov-Smirnov at the 1%
  // level over repeated fits
  const std::vector<std::int32_t> tiny_n{10, 20};
  const std::vector<std::int32_t> tiny_k{2, 3};
  const std::vector<double> tiny_h{0.0, 0.4};
  const std::vector<double> tiny_q{0.3, 0.7};
  const int runs = 200;
  std::vector<double> pvalues;
  for (int seed = 0; seed < runs; ++seed) {
    std::mt19937 rng(10007 + seed);
    std::normal_distribution<double> noise(0.0, 0.1);
    const auto records = make_records(
        {{Measure::ri, Transform::ncs}, {Measure::ari, Transform::ncs}}, tiny_n, tiny_k, tiny_h,
        tiny_q,
        [&](Measure, Transform, double, double, double, double qc) {
          return 0.3 * qc + noise(rng);
        });
    const RegressionModel model = fit_model(records);
    const int qa = model.spec.column(model.spec.cell_index(Measure::ri, Transform::ncs), Term::q);
    const int qb = model.spec.column(model.spec.cell_index(Measure::ari, Transform::ncs), Term::q);
    pvalues.push_back(coefficient_difference_test(model, qa, qb));
  }
  std::sort(pvalues.begin(), pvalues.end());
  double ks = 0.0;
  for (int i = 0; i < runs; ++i) {
    const double lo = std::abs(pvalues[static_cast<std::size_t>(i)] - i / static_cast<double>(runs));
    const double hi =
        std::abs(pvalues[static_cast<std::size_t>(i)] - (i + 1) / static_cast<double>(runs));
    ks = std::max({ks, lo, hi});
  }
  CHECK(ks < 1.62762 / std::sqrt(static_cast<double>(runs)));
}

TEST_CASE("monotonicity scan") {
  auto flat_records = [&](const CellFn& fn) {
    return make_records({{Measure::ri, Transform::ncs}}, kN, kK, kH, kQ, fn);
  };
  SUBCASE("increasing in q") {
    const auto records = flat_records(
        [](Measure, Transform, double, double, double, double qc) { return qc; });
    CHECK(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::q) ==
          TrendFlag::increasing);
    CHECK(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::k) ==
          TrendFlag::none);
  }
  SUBCASE("decreasing in k") {
    const auto records = flat_records(
        [](Measure, Transform, double, double kc, double, double) { return -0.1 * kc; });
    CHECK(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::k) ==
          TrendFlag::decreasing);
  }
  SUBCASE("direction depending on another parameter gives none") {
    const auto records = flat_records(
        [](Measure, Transform, double, double, double hc, double qc) {
          return hc < 0.0 ? qc : -qc;
        });
    CHECK(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::q) ==
          TrendFlag::none);
  }
  SUBCASE("constant slice gives none") {
    const auto records = flat_records(
        [](Measure, Transform, double, double, double, double) { return 0.5; });
    CHECK(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::q) ==
          TrendFlag::none);
  }
  SUBCASE("incomplete grid is an error") {
    auto records = flat_records(
        [](Measure, Transform, double, double, double, double qc) { return qc; });
    records.pop_back();
    CHECK_THROWS_WITH_AS(monotonicity_scan(records, Measure::ri, Transform::ncs, Parameter::q),
                         doctest::Contains("incomplete"), std::invalid_argument);
  }
  SUBCASE("missing slice is an error") {
    const auto records = flat_records(
        [](Measure, Transform, double, double, double, double qc) { return qc; });
    CHECK_THROWS_AS(monotonicity_scan(records, Measure::nmi, Transform::oc, Parameter::q),
                    std::invalid_argument);
  }
}

TEST_CASE("significance rows cover both families") {
  std::mt19937 rng(5);
  std::normal_distribution<double> noise(0.0, 0.1);
  const auto records = make_records(
      {{Measure::ri, Transform::ncs}, {Measure::ri, Transform::sc},
       {Measure::ari, Transform::ncs}, {Measure::ari, Transform::sc}},
      kN, kK, kH, kQ,
      [&](Measure, Transform, double, double, double, double qc) { return qc + noise(rng); });
  const auto rows = significance_matrices(fit_model(records), 0.05);
  int per_measure = 0, per_transform = 0;
  for (const auto& r : rows) {
    if (r.family == "per_measure") ++per_measure;
    else ++per_transform;
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    CHECK(r.significant == (r.p_value < 0.05));
  }
  CHECK(per_measure == 2 * 4 * 1);
  CHECK(per_transform == 2 * 4 * 1);
}

TEST_CASE("importance and trend csv round-trips") {
  std::mt19937 rng(21);
  std::normal_distribution<double> noise(0.0, 0.1);
  const auto records = make_records(
      {{Measure::ri, Transform::ncs}, {Measure::ji, Transform::oc}}, kN, kK, kH, kQ,
      [&](Measure, Transform, double, double kc, double, double qc) {
        return 0.5 * qc + 0.1 * kc + noise(rng);
      });
  const RegressionModel model = fit_model(records);
  ImportanceTable table = relative_importance(model);
  scan_trends(table, records);

  const auto dir = std::filesystem::temp_directory_path() /
                   ("mbench_reg_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string importance_path = (dir / "importance.csv").string();
  const std::string trends_path = (dir / "trends.csv").string();
  write_importance_csv(table, importance_path);
  write_trends_csv(table, trends_path);

  ImportanceTable loaded = read_importance_csv(importance_path);
  read_trends_csv(loaded, trends_path);
  REQUIRE(loaded.cells.size() == table.cells.size());
  for (std::size_t c = 0; c < table.cells.size(); ++c) {
    CHECK(loaded.cells[c].measure == table.cells[c].measure);
    CHECK(loaded.cells[c].transform == table.cells[c].transform);
    for (std::size_t t = 0; t < kTermCount; ++t) {
      CHECK(loaded.cells[c].beta[t] == doctest::Approx(table.cells[c].beta[t]).epsilon(1e-10));
      CHECK(loaded.cells[c].importance[t] ==
            doctest::Approx(table.cells[c].importance[t]).epsilon(1e-10));
    }
    CHECK(loaded.cells[c].trend == table.cells[c].trend);
  }
  std::filesystem::remove_all(dir);
}

TEST_SUITE_END();
