#pragma once

// UTF-8 helpers. Offsets throughout the library count Unicode scalar values.

#include <cstddef>
#include <string>
#include <string_view>

namespace nerlab::text {

/// Decodes UTF-8; throws ParseError on malformed input.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);

/// Number of code points in a UTF-8 string.
std::size_t length(std::string_view utf8);

/// Substring by code-point offsets [start, end).
std::string substr(std::string_view utf8, std::size_t start, std::size_t end);

bool is_valid_utf8(std::string_view utf8);

std::string to_lower(std::string_view utf8);
char32_t to_lower(char32_t c);

bool is_upper(char32_t c);
bool is_lower(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_latin(char32_t c);
bool is_punct(char32_t c);
bool is_space(char32_t c);

/// True when the string is non-empty and every code point is punctuation or symbol.
bool is_punctuation_token(std::string_view utf8);

}  // namespace nerlab::text
