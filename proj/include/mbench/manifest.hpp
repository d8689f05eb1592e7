#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mbench {

inline constexpr const char* kToolVersion = "0.1.0";

// Snapshot of one CLI run: effective configuration, inputs/outputs, timing.
// Written atomically next to the outputs; rerunning with the same
// configuration reproduces the same outputs (timing aside).
struct RunManifest {
  std::string command;
  std::string config_text;  // effective configuration, canonical form
  std::string grid_hash;    // hash of config_text
  std::vector<std::string> outputs;
  std::vector<std::string> notes;  // e.g. admitted degenerate grid points
  int workers = 1;
  std::int64_t timing_ms = 0;

  void write(const std::string& path) const;  // temp file + rename
};

}  // namespace mbench
