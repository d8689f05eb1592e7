#include "mbench/grid.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mbench/errors.hpp"
#include "mbench/sweep.hpp"

namespace mbench {

std::int64_t GridConfig::pair_count() const {
  return static_cast<std::int64_t>(n_values.size()) * static_cast<std::int64_t>(k_values.size()) *
         static_cast<std::int64_t>(h_values.size()) * static_cast<std::int64_t>(q_values.size()) *
         static_cast<std::int64_t>(transforms.size());
}

std::int64_t GridConfig::record_count() const {
  return pair_count() * static_cast<std::int64_t>(measures.size());
}

void GridConfig::validate() const {
  if (n_values.empty() || k_values.empty() || h_values.empty() || q_values.empty() ||
      transforms.empty() || measures.empty())
    throw std::invalid_argument("grid config: every value list must be non-empty");
  for (std::int32_t n : n_values)
    if (n < 1) throw std::invalid_argument("grid config: n values must be >= 1");
  for (std::int32_t k : k_values)
    if (k < 1) throw std::invalid_argument("grid config: k values must be >= 1");
  for (double h : h_values)
    if (!(h >= 0.0) || !(h <= 1.0)) throw std::invalid_argument("grid config: h values must be in [0, 1]");
  for (double q : q_values)
    if (!(q >= 0.0) || !(q <= 1.0)) throw std::invalid_argument("grid config: q values must be in [0, 1]");
}

GridConfig default_grid() {
  GridConfig config;
  for (int i = 0; i < 10; ++i) config.n_values.push_back(3240 + 1080 * i);
  for (int k = 2; k <= 11; ++k) config.k_values.push_back(k);
  for (int i = 0; i < 10; ++i) config.h_values.push_back(i / 10.0);
  for (int i = 1; i <= 10; ++i) config.q_values.push_back(i / 10.0);
  config.transforms.assign(std::begin(kAllTransforms), std::end(kAllTransforms));
  config.measures.assign(std::begin(kAllMeasures), std::end(kAllMeasures));
  return config;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  for (char ch : value) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!item.empty()) items.push_back(std::move(item));
      item.clear();
    } else {
      item += ch;
    }
  }
  if (!item.empty()) items.push_back(std::move(item));
  return items;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

GridConfig parse_grid_config(const std::string& text) {
  GridConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw io_error("grid config line " + std::to_string(lineno) + ": expected `key = values`");
    const std::string key = trim(line.substr(0, eq));
    const auto items = split_list(line.substr(eq + 1));
    try {
      if (key == "n_values") {
        for (const auto& v : items) config.n_values.push_back(std::stoi(v));
      } else if (key == "k_values") {
        for (const auto& v : items) config.k_values.push_back(std::stoi(v));
      } else if (key == "h_values") {
        for (const auto& v : items) config.h_values.push_back(std::stod(v));
      } else if (key == "q_values") {
        for (const auto& v : items) config.q_values.push_back(std::stod(v));
      } else if (key == "transforms") {
        for (const auto& v : items) config.transforms.push_back(parse_transform(v));
      } else if (key == "measures") {
        for (const auto& v : items) config.measures.push_back(parse_measure(v));
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw io_error("grid config line " + std::to_string(lineno) + ": " + e.what());
    }
    any = true;
  }
  if (!any) throw io_error("grid config: no keys found");
  config.validate();
  return config;
}

GridConfig load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open grid config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grid_config(buffer.str());
}

std::string format_grid_config(const GridConfig& config) {
  std::ostringstream out;
  auto join_ints = [&](const char* key, const std::vector<std::int32_t>& vals) {
    out << key << " = ";
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << vals[i];
    out << "\n";
  };
  join_ints("n_values", config.n_values);
  join_ints("k_values", config.k_values);
  out << "h_values = ";
  for (std::size_t i = 0; i < config.h_values.size(); ++i)
    out << (i ? "," : "") << format_real(config.h_values[i]);
  out << "\nq_values = ";
  for (std::size_t i = 0; i < config.q_values.size(); ++i)
    out << (i ? "," : "") << format_real(config.q_values[i]);
  out << "\ntransforms = ";
  for (std::size_t i = 0; i < config.transforms.size(); ++i)
    out << (i ? "," : "") << transform_name(config.transforms[i]);
  out << "\nmeasures = ";
  for (std::size_t i = 0; i < config.measures.size(); ++i)
    out << (i ? "," : "") << measure_name(config.measures[i]);
  out << "\n";
  return out.str();
}

std::string grid_hash(const GridConfig& config) {
  const std::string text = format_grid_config(config);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace mbench
