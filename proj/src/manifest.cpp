#include "mbench/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mbench/errors.hpp"

namespace mbench {

void RunManifest::write(const std::string& path) const {
  nlohmann::json doc;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  doc["config"] = config_text;
  doc["grid_hash"] = grid_hash;
  doc["outputs"] = outputs;
  doc["notes"] = notes;
  doc["workers"] = workers;
  doc["timing_ms"] = timing_ms;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw io_error("cannot open '" + tmp + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw io_error("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw io_error("cannot move '" + tmp + "' to '" + path + "'");
}

}  // namespace mbench
