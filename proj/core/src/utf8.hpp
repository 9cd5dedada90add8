#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nl2f::utf8 {

// Decodes UTF-8; invalid bytes decode as U+FFFD one byte at a time.
std::vector<char32_t> decode(std::string_view text);
std::string encode(const std::vector<char32_t>& code_points);
std::string encode(const char32_t* first, const char32_t* last);
std::size_t length(std::string_view text);

}  // namespace nl2f::utf8
