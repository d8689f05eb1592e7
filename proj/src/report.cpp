#include "mbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mbench/errors.hpp"

namespace mbench {

namespace {

// fixed palettes; colors are cosmetic, determinism is not
constexpr const char* kSegmentColors[10] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                            "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                                            "#9c755f", "#bab0ac"};
constexpr const char* kClusterColors[10] = {"#4e79a7", "#e15759", "#f28e2b", "#59a14f",
                                            "#b07aa1", "#76b7b2", "#edc948", "#ff9da7",
                                            "#9c755f", "#bab0ac"};
constexpr const char* kSignificantColor = "#2e7d32";
constexpr const char* kNotSignificantColor = "#c62828";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf);
}

class Svg {
 public:
  Svg(double width, double height) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
         << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
         << "\" fill=\"white\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "") {
    out_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
         << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\"";
    if (!stroke.empty()) out_ << " stroke=\"" << stroke << "\" stroke-width=\"0.5\"";
    out_ << "/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0) {
    out_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
         << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
         << fmt(width) << "\"/>\n";
  }

  void text(double x, double y, const std::string& content, double size = 11.0,
            const std::string& anchor = "start", const std::string& fill = "#000000") {
    out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\""
         << " font-size=\"" << fmt(size) << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill
         << "\">" << escape(content) << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) out_ << fmt(x) << "," << fmt(y) << " ";
    out_ << "\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& fill) {
    out_ << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
         << "\" fill=\"" << fill << "\"/>\n";
  }

  void triangle(double cx, double cy, double size, bool up, const std::string& fill) {
    const double h = size * 0.866;
    out_ << "<polygon points=\"";
    if (up) {
      out_ << fmt(cx) << "," << fmt(cy - h / 2) << " " << fmt(cx - size / 2) << ","
           << fmt(cy + h / 2) << " " << fmt(cx + size / 2) << "," << fmt(cy + h / 2);
    } else {
      out_ << fmt(cx) << "," << fmt(cy + h / 2) << " " << fmt(cx - size / 2) << ","
           << fmt(cy - h / 2) << " " << fmt(cx + size / 2) << "," << fmt(cy - h / 2);
    }
    out_ << "\" fill=\"" << fill << "\" stroke=\"#000000\" stroke-width=\"0.6\"/>\n";
  }

  void save(const std::string& path) {
    out_ << "</svg>\n";
    std::ofstream file(path);
    if (!file) throw io_error("cannot open '" + path + "' for writing");
    file << out_.str();
    if (!file) throw io_error("failed writing '" + path + "'");
  }

 private:
  static std::string escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
      switch (ch) {
        case '&': r += "&amp;"; break;
        case '<': r += "&lt;"; break;
        case '>': r += "&gt;"; break;
        default: r += ch;
      }
    }
    return r;
  }

  std::ostringstream out_;
};

std::vector<Measure> measures_in(const ImportanceTable& table) {
  std::vector<Measure> measures;
  for (Measure m : kAllMeasures)
    if (std::any_of(table.cells.begin(), table.cells.end(),
                    [&](const auto& c) { return c.measure == m; }))
      measures.push_back(m);
  return measures;
}

std::vector<Transform> transforms_in(const ImportanceTable& table) {
  std::vector<Transform> transforms;
  for (Transform t : kAllTransforms)
    if (std::any_of(table.cells.begin(), table.cells.end(),
                    [&](const auto& c) { return c.transform == t; }))
      transforms.push_back(t);
  return transforms;
}

}  // namespace

void emit_importance_bars(const ImportanceTable& table, const std::string& path) {
  if (table.cells.empty()) throw std::invalid_argument("emit_importance_bars: empty table");
  const auto measures = measures_in(table);
  const auto transforms = transforms_in(table);
  for (Measure m : measures)
    for (Transform t : transforms) table.cell(m, t);  // throws on an incomplete table

  // segments are the effect terms in model order, intercept omitted
  constexpr int kSegments = kTermCount - 1;

  double max_stack = 0.0;
  for (const auto& cell : table.cells) {
    double stack = 0.0;
    for (int s = 0; s < kSegments; ++s) stack += std::sqrt(cell.importance[static_cast<std::size_t>(s) + 1]);
    max_stack = std::max(max_stack, stack);
  }
  if (max_stack <= 0.0) max_stack = 1.0;

  const int cols = 3;
  const int rows = static_cast<int>((measures.size() + cols - 1) / static_cast<std::size_t>(cols));
  const double panel_w = 300.0, panel_h = 250.0, margin = 46.0, top = 30.0;
  const double legend_h = 54.0;
  const double width = cols * panel_w + 20.0;
  const double height = rows * panel_h + legend_h + 10.0;
  Svg svg(width, height);

  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    const double px = (static_cast<int>(mi) % cols) * panel_w + 10.0;
    const double py = (static_cast<int>(mi) / cols) * panel_h;
    const double plot_x = px + margin, plot_y = py + top;
    const double plot_w = panel_w - margin - 16.0, plot_h = panel_h - top - 42.0;

    svg.text(px + panel_w / 2, py + 16.0, "D_" + measure_name(measures[mi]), 13.0, "middle");
    svg.line(plot_x, plot_y, plot_x, plot_y + plot_h, "#000000");
    svg.line(plot_x, plot_y + plot_h, plot_x + plot_w, plot_y + plot_h, "#000000");
    for (int tick = 0; tick <= 4; ++tick) {
      const double v = max_stack * tick / 4.0;
      const double y = plot_y + plot_h - plot_h * tick / 4.0;
      svg.line(plot_x - 3.0, y, plot_x, y, "#000000");
      svg.text(plot_x - 5.0, y + 3.5, fmt(v), 8.0, "end");
    }

    const double slot = plot_w / static_cast<double>(transforms.size());
    const double bar_w = slot * 0.62;
    for (std::size_t ti = 0; ti < transforms.size(); ++ti) {
      const auto& cell = table.cell(measures[mi], transforms[ti]);
      const double bx = plot_x + slot * static_cast<double>(ti) + (slot - bar_w) / 2.0;
      double y = plot_y + plot_h;
      for (int s = 0; s < kSegments; ++s) {
        const double value = std::sqrt(cell.importance[static_cast<std::size_t>(s) + 1]);
        const double hpx = plot_h * value / max_stack;
        y -= hpx;
        if (hpx > 0.0) svg.rect(bx, y, bar_w, hpx, kSegmentColors[s], "#ffffff");
        // main-effect segments carry the monotone-trend marker
        if (s < 4) {
          const TrendFlag trend = cell.trend[static_cast<std::size_t>(s)];
          if (trend != TrendFlag::none)
            svg.triangle(bx + bar_w / 2.0, y + hpx / 2.0, 6.0, trend == TrendFlag::increasing,
                         "#ffffff");
        }
      }
      svg.text(bx + bar_w / 2.0, plot_y + plot_h + 12.0, transform_name(transforms[ti]), 9.0,
               "middle");
    }
  }

  // legend: term order matches the stacking order
  const double ly = rows * panel_h + 18.0;
  double lx = 16.0;
  for (int s = 0; s < kSegments; ++s) {
    svg.rect(lx, ly, 10.0, 10.0, kSegmentColors[s], "#000000");
    svg.text(lx + 13.0, ly + 9.0, term_name(static_cast<Term>(s + 1)), 10.0);
    lx += 13.0 + 9.0 * static_cast<double>(term_name(static_cast<Term>(s + 1)).size()) + 14.0;
  }
  svg.triangle(lx + 4.0, ly + 5.0, 7.0, true, "#ffffff");
  svg.text(lx + 12.0, ly + 9.0, "monotone increasing", 10.0);
  lx += 12.0 + 120.0;
  svg.triangle(lx + 4.0, ly + 5.0, 7.0, false, "#ffffff");
  svg.text(lx + 12.0, ly + 9.0, "monotone decreasing", 10.0);
  svg.save(path);
}

namespace {

double parameter_of(const ScoreRecord& r, Parameter p) {
  switch (p) {
    case Parameter::n: return r.n;
    case Parameter::k: return r.k;
    case Parameter::h: return r.h;
    case Parameter::q: return r.q;
  }
  throw std::invalid_argument("bad parameter");
}

}  // namespace

void emit_score_lines(const std::vector<ScoreRecord>& records, const ScoreLinesRequest& request,
                      const std::string& path) {
  if (request.measures.empty()) throw std::invalid_argument("emit_score_lines: empty measure set");

  // whichever parameter is neither on the x-axis nor pinned becomes the line
  // family; with several measures all three must be pinned
  std::vector<Parameter> free_params;
  for (Parameter p : kAllParameters) {
    if (p == request.x_param) continue;
    const bool fixed = (p == Parameter::n && request.fixed_n.has_value()) ||
                       (p == Parameter::k && request.fixed_k.has_value()) ||
                       (p == Parameter::h && request.fixed_h.has_value()) ||
                       (p == Parameter::q && request.fixed_q.has_value());
    if (!fixed) free_params.push_back(p);
  }
  if (free_params.size() > 1 || (free_params.size() == 1 && request.measures.size() > 1)) {
    std::string missing;
    for (Parameter p : free_params) missing += (missing.empty() ? "" : ", ") + parameter_name(p);
    throw std::invalid_argument("emit_score_lines: pin parameters [" + missing +
                                "] or use a single measure with one free parameter");
  }
  const bool lines_by_param = free_params.size() == 1;
  const Parameter family = lines_by_param ? free_params.front() : Parameter::n;

  auto matches = [&](const ScoreRecord& r) {
    if (r.transform != request.transform) return false;
    if (request.fixed_n && r.n != *request.fixed_n) return false;
    if (request.fixed_k && r.k != *request.fixed_k) return false;
    if (request.fixed_h && r.h != *request.fixed_h) return false;
    if (request.fixed_q && r.q != *request.fixed_q) return false;
    return true;
  };

  // series key -> x -> y
  std::map<std::string, std::map<double, double>> series;
  std::set<double> xs;
  for (const ScoreRecord& r : records) {
    if (!matches(r)) continue;
    if (std::find(request.measures.begin(), request.measures.end(), r.measure) ==
        request.measures.end())
      continue;
    std::string key = lines_by_param
                          ? parameter_name(family) + "=" + format_real(parameter_of(r, family))
                          : "D_" + measure_name(r.measure);
    const double x = parameter_of(r, request.x_param);
    series[key][x] = r.y;
    xs.insert(x);
  }
  if (series.empty())
    throw std::invalid_argument("emit_score_lines: no records match the requested slice");
  for (const auto& [key, points] : series) {
    if (points.size() != xs.size()) {
      std::string absent;
      for (double x : xs)
        if (!points.count(x)) absent += (absent.empty() ? "" : ", ") + format_real(x);
      throw std::invalid_argument("emit_score_lines: series " + key +
                                  " misses grid points at " + parameter_name(request.x_param) +
                                  " in {" + absent + "}");
    }
  }

  const double width = 640.0, height = 480.0;
  const double plot_x = 62.0, plot_y = 40.0, plot_w = width - 90.0, plot_h = height - 110.0;
  Svg svg(width, height);
  svg.text(width / 2.0, 20.0, "dissimilarity vs " + parameter_name(request.x_param) + "  (" +
                                  transform_name(request.transform) + ")",
           13.0, "middle");

  const double x_min = *xs.begin(), x_max = *xs.rbegin();
  double y_max = 0.0;
  for (const auto& [key, points] : series)
    for (const auto& [x, y] : points) y_max = std::max(y_max, y);
  y_max = std::max(y_max, 1.0);

  auto sx = [&](double x) {
    return x_max > x_min ? plot_x + (x - x_min) / (x_max - x_min) * plot_w : plot_x + plot_w / 2.0;
  };
  auto sy = [&](double y) { return plot_y + plot_h - y / y_max * plot_h; };

  svg.line(plot_x, plot_y, plot_x, plot_y + plot_h, "#000000");
  svg.line(plot_x, plot_y + plot_h, plot_x + plot_w, plot_y + plot_h, "#000000");
  for (int tick = 0; tick <= 5; ++tick) {
    const double v = y_max * tick / 5.0;
    svg.line(plot_x - 3.0, sy(v), plot_x, sy(v), "#000000");
    svg.text(plot_x - 6.0, sy(v) + 3.5, fmt(v), 9.0, "end");
  }
  for (double x : xs) {
    svg.line(sx(x), plot_y + plot_h, sx(x), plot_y + plot_h + 3.0, "#000000");
    svg.text(sx(x), plot_y + plot_h + 14.0, format_real(x), 8.0, "middle");
  }
  svg.text(plot_x + plot_w / 2.0, plot_y + plot_h + 30.0, parameter_name(request.x_param), 11.0,
           "middle");

  int color = 0;
  double legend_y = height - 58.0;
  double legend_x = plot_x;
  for (const auto& [key, points] : series) {
    const char* stroke = kSegmentColors[color % 10];
    std::vector<std::pair<double, double>> coords;
    for (const auto& [x, y] : points) coords.emplace_back(sx(x), sy(y));
    svg.polyline(coords, stroke);
    for (const auto& [x, y] : coords) svg.circle(x, y, 2.2, stroke);
    svg.line(legend_x, legend_y, legend_x + 16.0, legend_y, stroke, 2.0);
    svg.text(legend_x + 20.0, legend_y + 3.5, key, 9.0);
    legend_x += 26.0 + 7.0 * static_cast<double>(key.size()) + 12.0;
    if (legend_x > width - 110.0) {
      legend_x = plot_x;
      legend_y += 14.0;
    }
    ++color;
  }
  svg.save(path);
}

void emit_significance_matrices(const std::vector<SignificanceRow>& rows,
                                const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_significance_matrices: no rows");

  struct Family {
    std::string name;
    std::vector<std::string> items;
    std::vector<std::string> keys;
  };
  auto order_of = [](const std::string& family) {
    std::vector<std::string> names;
    if (family == "per_measure") {
      for (Transform t : kAllTransforms) names.push_back(transform_name(t));
    } else {
      for (Measure m : kAllMeasures) names.push_back(measure_name(m));
    }
    return names;
  };
  auto keys_of = [](const std::string& family) {
    std::vector<std::string> names;
    if (family == "per_measure") {
      for (Measure m : kAllMeasures) names.push_back(measure_name(m));
    } else {
      for (Transform t : kAllTransforms) names.push_back(transform_name(t));
    }
    return names;
  };

  std::vector<Family> families;
  for (const char* fname : {"per_measure", "per_transform"}) {
    Family family;
    family.name = fname;
    std::set<std::string> seen_items, seen_keys;
    for (const SignificanceRow& r : rows) {
      if (r.family != fname) continue;
      seen_items.insert(r.item_a);
      seen_items.insert(r.item_b);
      seen_keys.insert(r.fixed_key);
    }
    for (const std::string& name : order_of(fname))
      if (seen_items.count(name)) family.items.push_back(name);
    for (const std::string& name : keys_of(fname))
      if (seen_keys.count(name)) family.keys.push_back(name);
    if (!family.keys.empty()) families.push_back(std::move(family));
  }

  const double cell = 16.0, block_pad = 34.0, label_h = 26.0;
  double width = 0.0, height = 24.0;
  for (const Family& family : families) {
    const double block_w = cell * static_cast<double>(family.items.size()) + block_pad;
    width = std::max(width, 150.0 + 4.0 * block_w);
    height += 30.0 + static_cast<double>(family.keys.size()) *
                         (cell * static_cast<double>(family.items.size()) + label_h + 16.0);
  }
  Svg svg(std::max(width, 560.0), height);

  double y = 20.0;
  for (const Family& family : families) {
    svg.text(16.0, y, family.name == "per_measure"
                          ? "transformation pairs, per measure and parameter"
                          : "measure pairs, per transformation and parameter",
             12.0);
    y += 14.0;
    const std::size_t nitems = family.items.size();
    const double block_w = cell * static_cast<double>(nitems) + block_pad;
    for (const std::string& key : family.keys) {
      double x = 120.0;
      svg.text(16.0, y + cell * static_cast<double>(nitems) / 2.0, key, 11.0);
      int pi = 0;
      for (Parameter p : kAllParameters) {
        svg.text(x + cell * static_cast<double>(nitems) / 2.0, y - 4.0, parameter_name(p), 10.0,
                 "middle");
        for (std::size_t a = 0; a < nitems; ++a) {
          for (std::size_t b = 0; b < nitems; ++b) {
            std::string fill = "#eeeeee";  // diagonal: no difference to test
            if (a != b) {
              const std::string& ia = family.items[std::min(a, b)];
              const std::string& ib = family.items[std::max(a, b)];
              for (const SignificanceRow& r : rows) {
                if (r.family == family.name && r.fixed_key == key &&
                    parameter_name(r.param_set) == parameter_name(p) && r.item_a == ia &&
                    r.item_b == ib) {
                  fill = r.significant ? kSignificantColor : kNotSignificantColor;
                  break;
                }
              }
            }
            svg.rect(x + cell * static_cast<double>(b), y + cell * static_cast<double>(a), cell,
                     cell, fill, "#ffffff");
          }
          if (pi == 0)
            svg.text(x - 3.0, y + cell * static_cast<double>(a) + cell * 0.7, family.items[a],
                     7.5, "end");
        }
        for (std::size_t b = 0; b < nitems; ++b)
          svg.text(x + cell * static_cast<double>(b) + cell / 2.0,
                   y + cell * static_cast<double>(nitems) + 9.0, family.items[b], 7.5, "middle");
        x += block_w;
        ++pi;
      }
      y += cell * static_cast<double>(nitems) + label_h + 16.0;
    }
    y += 16.0;
  }
  svg.save(path);
}

void emit_significance_matrices(const RegressionModel& model, double alpha,
                                const std::string& path) {
  emit_significance_matrices(significance_matrices(model, alpha), path);
}

namespace {

void emit_typology_grid(const std::vector<TypologyRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_typology_table: no rows");
  std::vector<Measure> measures;
  std::vector<Transform> transforms;
  for (Measure m : kAllMeasures)
    if (std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.measure == m; }))
      measures.push_back(m);
  for (Transform t : kAllTransforms)
    if (std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.transform == t; }))
      transforms.push_back(t);

  const double cell_w = 92.0, cell_h = 30.0, left = 70.0, top = 44.0;
  const double width = left + cell_w * static_cast<double>(transforms.size()) + 20.0;
  const double height = top + cell_h * static_cast<double>(measures.size()) + 56.0;
  Svg svg(width, height);
  svg.text(width / 2.0, 18.0, "measure typology (color = cluster, dot = medoid)", 12.0, "middle");

  for (std::size_t ti = 0; ti < transforms.size(); ++ti)
    svg.text(left + cell_w * static_cast<double>(ti) + cell_w / 2.0, top - 6.0,
             transform_name(transforms[ti]), 10.0, "middle");
  int max_cluster = 0;
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    svg.text(left - 6.0, top + cell_h * static_cast<double>(mi) + cell_h * 0.62,
             "D_" + measure_name(measures[mi]), 10.0, "end");
    for (std::size_t ti = 0; ti < transforms.size(); ++ti) {
      const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
        return r.measure == measures[mi] && r.transform == transforms[ti];
      });
      if (it == rows.end())
        throw std::invalid_argument("emit_typology_table: missing cell " +
                                    measure_name(measures[mi]) + ":" +
                                    transform_name(transforms[ti]));
      max_cluster = std::max(max_cluster, it->cluster_id);
      const double x = left + cell_w * static_cast<double>(ti);
      const double y = top + cell_h * static_cast<double>(mi);
      svg.rect(x, y, cell_w, cell_h, kClusterColors[it->cluster_id % 10], "#ffffff");
      if (it->is_medoid) svg.circle(x + cell_w - 10.0, y + cell_h / 2.0, 3.0, "#000000");
    }
  }
  double lx = left;
  const double ly = top + cell_h * static_cast<double>(measures.size()) + 22.0;
  for (int c = 0; c <= max_cluster; ++c) {
    svg.rect(lx, ly, 10.0, 10.0, kClusterColors[c % 10], "#000000");
    svg.text(lx + 13.0, ly + 9.0, "cluster " + std::to_string(c), 10.0);
    lx += 86.0;
  }
  svg.save(path);
}

}  // namespace

void emit_typology_table(const std::vector<TypologyRow>& rows, const std::string& path) {
  emit_typology_grid(rows, path);
}

void emit_typology_table(const TypologyResult& result, const std::string& path) {
  std::vector<TypologyRow> rows;
  const TypologyCandidate& chosen = result.candidate(result.chosen_k);
  for (std::size_t i = 0; i < result.profiles.size(); ++i) {
    const bool medoid =
        std::find(chosen.clustering.medoids.begin(), chosen.clustering.medoids.end(),
                  static_cast<int>(i)) != chosen.clustering.medoids.end();
    rows.push_back({result.profiles[i].measure, result.profiles[i].transform,
                    chosen.clustering.assignment[i], medoid});
  }
  emit_typology_grid(rows, path);
}

}  // namespace mbench
