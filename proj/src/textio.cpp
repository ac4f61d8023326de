#include "textio.hpp"

#include <charconv>
#include <istream>

#include "mrlrc/errors.hpp"

namespace mrlrc::textio {

std::string join(const std::vector<std::uint32_t>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view token) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw FormatError("expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::uint32_t parse_u32(std::string_view token) {
  const auto v = parse_u64(token);
  if (v > UINT32_MAX) throw FormatError("integer out of range: " + std::string(token));
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> parse_u32_list(std::string_view text, char sep) {
  std::vector<std::uint32_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(parse_u32(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

KeyValues parse_key_values(std::string_view line) {
  KeyValues kv;
  for (auto token : split_ws(line)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw FormatError("expected key=value, got '" + std::string(token) + "'");
    }
    auto [it, inserted] =
        kv.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
    if (!inserted) throw FormatError("duplicate key '" + it->first + "'");
  }
  return kv;
}

std::uint64_t require_u64(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("missing key '" + key + "'");
  return parse_u64(it->second);
}

std::uint32_t require_u32(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("missing key '" + key + "'");
  return parse_u32(it->second);
}

std::string read_line(std::istream& in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("unexpected end of input while reading " + std::string(what));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void expect_line(std::istream& in, std::string_view expected) {
  const auto line = read_line(in, expected);
  if (line != expected) {
    throw FormatError("expected '" + std::string(expected) + "', got '" + line + "'");
  }
}

}  // namespace mrlrc::textio
