#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mbench/report.hpp"
#include "mbench/sweep.hpp"

using namespace mbench;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("mbench_report_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

ImportanceTable full_table() {
  std::mt19937 rng(8080);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  ImportanceTable table;
  for (Measure m : kAllMeasures) {
    for (Transform t : kAllTransforms) {
      ImportanceTable::Cell cell;
      cell.measure = m;
      cell.transform = t;
      cell.beta.fill(0.0);
      cell.beta_std.fill(0.0);
      for (auto& v : cell.importance) v = u(rng);
      cell.trend.fill(TrendFlag::none);
      cell.trend[static_cast<std::size_t>(Parameter::q)] = TrendFlag::increasing;
      if (t == Transform::onc)
        cell.trend[static_cast<std::size_t>(Parameter::k)] = TrendFlag::decreasing;
      table.cells.push_back(cell);
    }
  }
  return table;
}

std::vector<ScoreRecord> line_records() {
  std::vector<ScoreRecord> records;
  for (Measure m : kAllMeasures)
    for (int qi = 1; qi <= 10; ++qi)
      records.push_back({3240, 2, 0.0, qi / 10.0, Transform::sc, m, 0.05 * qi, false});
  return records;
}

}  // namespace

TEST_SUITE_BEGIN("report");

TEST_CASE("importance bars are deterministic and complete") {
  TempDir dir;
  const ImportanceTable table = full_table();
  const std::string path = dir.file("bars.svg");
  emit_importance_bars(table, path);
  const std::string svg = slurp(path);
  CHECK(svg.starts_with("<svg"));
  for (Measure m : kAllMeasures) CHECK(svg.find("D_" + measure_name(m)) != std::string::npos);
  // ten segment colors per bar, intercept omitted from the legend
  CHECK(svg.find(">intercept<") == std::string::npos);
  CHECK(svg.find(">hq<") != std::string::npos);
  CHECK(count_of(svg, "<polygon") > 30);  // trend triangles

  emit_importance_bars(table, dir.file("bars2.svg"));
  CHECK(slurp(dir.file("bars2.svg")) == svg);
}

TEST_CASE("importance bars reject incomplete tables") {
  TempDir dir;
  ImportanceTable table = full_table();
  table.cells.pop_back();
  CHECK_THROWS_AS(emit_importance_bars(table, dir.file("bad.svg")), std::invalid_argument);
}

TEST_CASE("score lines draw one polyline per measure") {
  TempDir dir;
  ScoreLinesRequest request;
  request.measures.assign(std::begin(kAllMeasures), std::end(kAllMeasures));
  request.transform = Transform::sc;
  request.x_param = Parameter::q;
  request.fixed_n = 3240;
  request.fixed_k = 2;
  request.fixed_h = 0.0;
  const std::string path = dir.file("lines.svg");
  emit_score_lines(line_records(), request, path);
  const std::string svg = slurp(path);
  CHECK(count_of(svg, "<polyline") == 6);
  CHECK(svg.find("D_NMI") != std::string::npos);

  emit_score_lines(line_records(), request, dir.file("lines2.svg"));
  CHECK(slurp(dir.file("lines2.svg")) == svg);
}

TEST_CASE("score lines can span a secondary parameter") {
  TempDir dir;
  // single measure, k free: one line per k value
  std::vector<ScoreRecord> records;
  for (int k = 2; k <= 4; ++k)
    for (int qi = 1; qi <= 5; ++qi)
      records.push_back({3240, k, 0.0, qi / 10.0, Transform::onc, Measure::ri,
                         0.01 * k + 0.02 * qi, false});
  ScoreLinesRequest request;
  request.measures = {Measure::ri};
  request.transform = Transform::onc;
  request.x_param = Parameter::q;
  request.fixed_n = 3240;
  request.fixed_h = 0.0;
  const std::string path = dir.file("lines_by_k.svg");
  emit_score_lines(records, request, path);
  const std::string svg = slurp(path);
  CHECK(count_of(svg, "<polyline") == 3);
  CHECK(svg.find("k=2") != std::string::npos);
}

TEST_CASE("score lines validate the request") {
  TempDir dir;
  ScoreLinesRequest request;
  request.transform = Transform::sc;
  request.x_param = Parameter::q;
  SUBCASE("empty measures") {
    CHECK_THROWS_AS(emit_score_lines(line_records(), request, dir.file("x.svg")),
                    std::invalid_argument);
  }
  SUBCASE("unpinned parameters are named") {
    request.measures = {Measure::ri, Measure::ari};
    request.fixed_n = 3240;
    CHECK_THROWS_WITH_AS(emit_score_lines(line_records(), request, dir.file("x.svg")),
                         doctest::Contains("k"), std::invalid_argument);
  }
  SUBCASE("missing grid points are listed") {
    request.measures.assign(std::begin(kAllMeasures), std::end(kAllMeasures));
    request.fixed_n = 3240;
    request.fixed_k = 2;
    request.fixed_h = 0.0;
    auto records = line_records();
    records.erase(records.begin() + 3);  // drop one q point of one measure
    CHECK_THROWS_WITH_AS(emit_score_lines(records, request, dir.file("x.svg")),
                         doctest::Contains("misses grid points"), std::invalid_argument);
  }
}

TEST_CASE("significance matrices render both families") {
  TempDir dir;
  std::vector<SignificanceRow> rows;
  for (Measure m : kAllMeasures)
    for (Parameter p : kAllParameters)
      for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
          rows.push_back({"per_measure", measure_name(m), p, transform_name(kAllTransforms[a]),
                          transform_name(kAllTransforms[b]), (a + b) % 2 ? 0.01 : 0.5,
                          (a + b) % 2 == 1});
  for (Transform t : kAllTransforms)
    for (Parameter p : kAllParameters)
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b)
          rows.push_back({"per_transform", transform_name(t), p, measure_name(kAllMeasures[a]),
                          measure_name(kAllMeasures[b]), 0.2, false});
  const std::string path = dir.file("sig.svg");
  emit_significance_matrices(rows, path);
  const std::string svg = slurp(path);
  CHECK(svg.find("transformation pairs") != std::string::npos);
  CHECK(svg.find("measure pairs") != std::string::npos);
  CHECK(count_of(svg, "#2e7d32") > 0);   // significant cells
  CHECK(count_of(svg, "#c62828") > 0);   // non-significant cells
  CHECK(count_of(svg, "#eeeeee") >= 24); // diagonals

  emit_significance_matrices(rows, dir.file("sig2.svg"));
  CHECK(slurp(dir.file("sig2.svg")) == svg);
}

TEST_CASE("typology table colors the measure-transformation grid") {
  TempDir dir;
  std::vector<TypologyRow> rows;
  int i = 0;
  for (Measure m : kAllMeasures)
    for (Transform t : kAllTransforms) rows.push_back({m, t, i++ % 5, i % 7 == 0});
  const std::string path = dir.file("typ.svg");
  emit_typology_table(rows, path);
  const std::string svg = slurp(path);
  for (Measure m : kAllMeasures) CHECK(svg.find("D_" + measure_name(m)) != std::string::npos);
  CHECK(svg.find("cluster 4") != std::string::npos);

  rows.pop_back();
  CHECK_THROWS_AS(emit_typology_table(rows, dir.file("typ_bad.svg")), std::invalid_argument);
}

TEST_SUITE_END();
