#pragma once

// Small cursor for the recursive-descent parsers of the text formats.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "cfgring/errors.hpp"

namespace cfgring {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::string_view text() const noexcept { return text_; }
  std::size_t position() const noexcept { return pos_; }
  bool at_end();
  void skip_ws();
  bool peek(std::string_view token);
  bool consume(std::string_view token);
  void expect(std::string_view token);
  void expect_end();
  std::uint64_t integer();
  /// Raw text up to (not including) the first character of `stops` found at
  /// bracket depth zero, with surrounding whitespace removed. Records the
  /// start offset in `start`.
  std::string_view take_until(std::string_view stops, std::size_t& start);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const;
  /// Rethrows an error raised on a substring starting at `offset`.
  [[noreturn]] void rethrow(const ParseError& inner, std::size_t offset) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace cfgring
