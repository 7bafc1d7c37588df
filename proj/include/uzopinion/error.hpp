#pragma once

#include <stdexcept>
#include <string>

namespace uzopinion {

/// Error type thrown by every library entry point on invalid input,
/// malformed files or bad parameters. The message is a single line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace uzopinion
