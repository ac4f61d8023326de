#pragma once

// Line-oriented helpers shared by the text artifact readers and writers.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mrlrc::textio {

using KeyValues = std::map<std::string, std::string>;

std::string join(const std::vector<std::uint32_t>& values, char sep);

std::uint32_t parse_u32(std::string_view token);
std::uint64_t parse_u64(std::string_view token);
std::vector<std::uint32_t> parse_u32_list(std::string_view text, char sep);
std::vector<std::string_view> split_ws(std::string_view line);

/// `k1=v1 k2=v2 ...`; duplicate keys are rejected.
KeyValues parse_key_values(std::string_view line);
std::uint32_t require_u32(const KeyValues& kv, const std::string& key);
std::uint64_t require_u64(const KeyValues& kv, const std::string& key);

/// Next line with the trailing '\r' stripped; throws FormatError at EOF.
std::string read_line(std::istream& in, std::string_view what);
/// Throws unless the next line equals `expected`.
void expect_line(std::istream& in, std::string_view expected);

}  // namespace mrlrc::textio
