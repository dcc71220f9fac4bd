#pragma once

#include <stdexcept>
#include <string>

namespace modverb {

// Input data failed parsing or validation. The message carries the source
// name and 1-based line where known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message) : std::runtime_error(message) {}

  DataError(const std::string& source, int line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message) {}
};

}  // namespace modverb
