#pragma once

#include <stdexcept>
#include <string>

namespace cskel {

/// File-system level failure (missing file, unwritable path). Kept distinct
/// from std::invalid_argument so callers can map I/O and validation errors
/// to different exit codes.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace cskel
