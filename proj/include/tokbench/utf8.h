#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tokbench::utf8 {

// Malformed sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view s);

std::string encode(char32_t cp);
std::string encode(std::u32string_view s);

// One string per code point.
std::vector<std::string> split(std::string_view s);

// Exactly one code point, or throws DomainError.
char32_t single(std::string_view s);

std::string hex(char32_t cp);  // "U+AC00"

}  // namespace tokbench::utf8
