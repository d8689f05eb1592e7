#pragma once

#include <stdexcept>
#include <string>

namespace mbench {

// File access / parse failures; the CLI maps these to their own exit code.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mbench
