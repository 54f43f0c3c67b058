#include "cfgring/text.hpp"

#include <cctype>

namespace cfgring {

ParseError::ParseError(std::string text, std::size_t position, const std::string& message)
    : InputError("column " + std::to_string(position + 1) + ": " + message),
      text_(std::move(text)),
      position_(position),
      message_(message) {}

std::string ParseError::annotated() const {
  std::string out = what();
  out += "\n  " + text_ + "\n  ";
  out += std::string(std::min(position_, text_.size()), ' ');
  out += '^';
  return out;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

void Cursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::peek(std::string_view token) {
  skip_ws();
  return text_.substr(pos_, token.size()) == token;
}

bool Cursor::consume(std::string_view token) {
  if (!peek(token)) return false;
  pos_ += token.size();
  return true;
}

void Cursor::expect(std::string_view token) {
  if (!consume(token)) fail("expected '" + std::string(token) + "'");
}

void Cursor::expect_end() {
  if (!at_end()) fail("unexpected trailing text");
}

std::uint64_t Cursor::integer() {
  skip_ws();
  if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer");
  std::uint64_t v = 0;
  const std::size_t start = pos_;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    if (v > (UINT64_MAX - 9) / 10) fail_at(start, "integer too large");
    v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
  }
  return v;
}

std::string_view Cursor::take_until(std::string_view stops, std::size_t& start) {
  skip_ws();
  start = pos_;
  int depth = 0;
  std::size_t i = pos_;
  for (; i < text_.size(); ++i) {
    const char c = text_[i];
    if (depth == 0 && stops.find(c) != std::string_view::npos) break;
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) break;
      --depth;
    }
  }
  std::size_t end = i;
  while (end > start && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
  pos_ = i;
  return text_.substr(start, end - start);
}

void Cursor::fail(const std::string& message) const { fail_at(pos_, message); }

void Cursor::fail_at(std::size_t pos, const std::string& message) const {
  throw ParseError(std::string(text_), pos, message);
}

void Cursor::rethrow(const ParseError& inner, std::size_t offset) const {
  throw ParseError(std::string(text_), offset + inner.position(), inner.message());
}

}  // namespace cfgring
