#include "doctest.h"
#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

using namespace nerlab;

TEST_CASE("code point offsets over Cyrillic") {
  const std::string s = "Нурофен помог";
  CHECK(text::length(s) == 13);
  CHECK(text::substr(s, 8, 13) == "помог");
  CHECK(text::encode(text::decode(s)) == s);
  CHECK(text::substr(s, 0, 0).empty());
}

TEST_CASE("malformed UTF-8 is rejected") {
  CHECK_FALSE(text::is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(text::is_valid_utf8("\xd0"));
  CHECK(text::is_valid_utf8("ёж"));
  CHECK_THROWS_AS(text::decode("ab\xc3"), ParseError);
}

TEST_CASE("case mapping and classes") {
  CHECK(text::to_lower("НУРОФЕН Ёж ABC") == "нурофен ёж abc");
  CHECK(text::is_upper(U'Ж'));
  CHECK(text::is_lower(U'ж'));
  CHECK(text::is_latin(U'q'));
  CHECK_FALSE(text::is_latin(U'ф'));
  CHECK(text::is_digit(U'7'));
  CHECK(text::is_punct(U'!'));
  CHECK(text::is_punct(U'«'));
  CHECK(text::is_space(U' '));
}

TEST_CASE("punctuation tokens") {
  CHECK(text::is_punctuation_token("..."));
  CHECK(text::is_punctuation_token("—"));
  CHECK_FALSE(text::is_punctuation_token("a."));
  CHECK_FALSE(text::is_punctuation_token(""));
}
