#include "nerlab/text.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "nerlab/error.hpp"

namespace nerlab::text {

namespace {

// Returns the next code point or a negative value on malformed input.
UChar32 next(std::string_view s, std::size_t& i) {
  UChar32 c = 0;
  auto len = static_cast<int32_t>(s.size());
  auto pos = static_cast<int32_t>(i);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), pos, len, c);
  i = static_cast<std::size_t>(pos);
  return c;
}

}  // namespace

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  for (std::size_t i = 0; i < utf8.size();) {
    std::size_t at = i;
    UChar32 c = next(utf8, i);
    if (c < 0) throw ParseError("invalid UTF-8 sequence", "byte " + std::to_string(at));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), err);
    if (err) throw ParseError("code point not encodable", "U+" + std::to_string(static_cast<uint32_t>(c)));
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_valid_utf8(std::string_view utf8) {
  for (std::size_t i = 0; i < utf8.size();) {
    if (next(utf8, i) < 0) return false;
  }
  return true;
}

std::size_t length(std::string_view utf8) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < utf8.size(); ++n) {
    if (next(utf8, i) < 0) throw ParseError("invalid UTF-8 sequence", "");
  }
  return n;
}

std::string substr(std::string_view utf8, std::size_t start, std::size_t end) {
  std::size_t cp = 0;
  std::size_t i = 0;
  std::size_t byte_start = utf8.size();
  while (i < utf8.size() && cp < start) {
    next(utf8, i);
    ++cp;
  }
  byte_start = i;
  while (i < utf8.size() && cp < end) {
    next(utf8, i);
    ++cp;
  }
  return std::string(utf8.substr(byte_start, i - byte_start));
}

char32_t to_lower(char32_t c) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))); }

std::string to_lower(std::string_view utf8) {
  std::u32string cps = decode(utf8);
  for (auto& c : cps) c = to_lower(c);
  return encode(cps);
}

bool is_upper(char32_t c) { return u_isUUppercase(static_cast<UChar32>(c)); }
bool is_lower(char32_t c) { return u_isULowercase(static_cast<UChar32>(c)); }
bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }
bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }
bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_latin(char32_t c) {
  UErrorCode status = U_ZERO_ERROR;
  return uscript_getScript(static_cast<UChar32>(c), &status) == USCRIPT_LATIN && U_SUCCESS(status);
}

bool is_punct(char32_t c) {
  auto cat = u_charType(static_cast<UChar32>(c));
  switch (cat) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return true;
    default:
      return false;
  }
}

bool is_punctuation_token(std::string_view utf8) {
  if (utf8.empty()) return false;
  for (char32_t c : decode(utf8)) {
    if (!is_punct(c)) return false;
  }
  return true;
}

}  // namespace nerlab::text
