#pragma once

// Shared helpers for the line-oriented text formats. Internal to the library.

#include "hyperbeta/error.hpp"

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbeta::text {

struct Line {
  int number;
  std::string_view text;
};

inline std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Non-empty lines with comments stripped.
inline std::vector<Line> meaningful_lines(std::string_view text, int first_line = 1)
{
  std::vector<Line> out;
  int number = first_line;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty())
      out.push_back({number, raw});
    ++number;
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long parse_integer(std::string_view tok, int line)
{
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(ErrorCode::ParseError, line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

inline double parse_real(std::string_view tok, int line)
{
  // std::from_chars for double is not available on every libstdc++ we target
  std::string copy(tok);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != copy.size() || copy.empty())
    throw ParseError(ErrorCode::ParseError, line, "expected a real number, got '" + copy + "'");
  return value;
}

// Parses `key=<int>` (spaces around '=' allowed).
inline std::optional<long> keyed_integer(std::string_view text, std::string_view key, int line)
{
  if (text.substr(0, key.size()) != key)
    return std::nullopt;
  std::string_view rest = trim(text.substr(key.size()));
  if (rest.empty() || rest.front() != '=')
    return std::nullopt;
  return parse_integer(trim(rest.substr(1)), line);
}

inline int parse_header(const std::vector<Line>& lines)
{
  if (lines.empty())
    throw ParseError(ErrorCode::ParseError, 1, "missing 'n=<N>' header");
  auto n = keyed_integer(lines.front().text, "n", lines.front().number);
  if (!n || *n < 1)
    throw ParseError(ErrorCode::ParseError, lines.front().number, "expected 'n=<N>' with N >= 1");
  return static_cast<int>(*n);
}

inline std::vector<double> parse_values(std::string_view text, int n, int line)
{
  std::vector<double> values;
  for (std::string_view tok : tokens(text))
    values.push_back(parse_real(tok, line));
  if (static_cast<int>(values.size()) != n)
    throw ParseError(ErrorCode::ParseError, line,
                     "expected " + std::to_string(n) + " values, got " + std::to_string(values.size()));
  return values;
}

} // namespace hyperbeta::text
