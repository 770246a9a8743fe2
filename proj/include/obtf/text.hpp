#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace obtf::text {

/// A non-blank line with comments stripped, split on whitespace.
struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text);

/// Parses a full-token integer; throws ParseError naming `line` otherwise.
int parse_int(const std::string& token, std::size_t line);

/// Reads the mandatory `n <int>` header from lines[0] and checks 0 <= n <= max_n.
int parse_header(const std::vector<Line>& lines, int max_n);

}  // namespace obtf::text
