#include "obtf/text.hpp"

#include <charconv>
#include <sstream>

#include "obtf/error.hpp"

namespace obtf::text {

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

int parse_int(const std::string& token, std::size_t line) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

int parse_header(const std::vector<Line>& lines, int max_n) {
  if (lines.empty()) throw ParseError(0, "missing 'n <int>' header");
  const Line& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "n") {
    throw ParseError(head.number, "expected 'n <int>' header");
  }
  int n = parse_int(head.tokens[1], head.number);
  if (n < 0 || n > max_n) {
    throw ParseError(head.number, "n must lie in [0, " + std::to_string(max_n) + "]");
  }
  return n;
}

}  // namespace obtf::text
