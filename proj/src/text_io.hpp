#pragma once

// Line-oriented tokenizer shared by the text formats. Internal header.

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldim/error.hpp"
#include "ldim/poset.hpp"

namespace ldim::detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank, non-comment line split on whitespace.
  std::optional<std::vector<std::string>> next() {
    while (auto raw = next_raw()) {
      auto tokens = split(*raw);
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  }

  /// Next non-comment line, which may be blank.
  std::optional<std::vector<std::string>> next_keep_blank() {
    if (auto raw = next_raw()) return split(*raw);
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::optional<std::string> next_raw() {
    std::string s;
    while (std::getline(in_, s)) {
      ++line_;
      auto hash = s.find('#');
      if (hash != std::string::npos) {
        // Whole-line comments are skipped; trailing comments are stripped.
        if (s.find_first_not_of(" \t\r") == hash) continue;
        s.erase(hash);
      }
      return s;
    }
    return std::nullopt;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  }

  std::istream& in_;
  std::size_t line_ = 0;
};

inline std::size_t parse_count(std::size_t line, const std::string& tok) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got `" + tok + "`");
  return v;
}

inline ElementId parse_id(std::size_t line, const std::string& tok, std::size_t n) {
  const auto v = parse_count(line, tok);
  if (v < 1 || v > n)
    throw ParseError(line, "element `" + tok + "` out of range 1.." + std::to_string(n));
  return static_cast<ElementId>(v);
}

}  // namespace ldim::detail
