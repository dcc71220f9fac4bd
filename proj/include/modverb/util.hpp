#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modverb {

std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view s);

// ASCII-only lowercasing; multi-byte UTF-8 sequences pass through unchanged.
std::string ascii_lower(std::string_view s);

std::optional<std::uint64_t> parse_u64(std::string_view s);

// Report output uses 4 decimal places throughout.
double round4(double x);
std::string fmt4(double x);

}  // namespace modverb
