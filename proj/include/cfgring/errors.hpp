#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfgring {

/// Out-of-contract input: bad parameters, mixed owners, malformed tables.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not match the grammar. Carries the offending string and a
/// zero-based character offset.
class ParseError : public InputError {
 public:
  ParseError(std::string text, std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }
  const std::string& text() const noexcept { return text_; }
  const std::string& message() const noexcept { return message_; }

  /// "column N: message" followed by the input and a caret line.
  std::string annotated() const;

 private:
  std::string text_;
  std::size_t position_;
  std::string message_;
};

/// A configurable size cap (ring size, subring size, orbit length) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfgring
