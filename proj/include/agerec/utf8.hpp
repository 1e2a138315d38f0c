#pragma once

#include <string>
#include <string_view>

// Minimal UTF-8 helpers covering what French text processing needs:
// code point iteration, Latin-1/Latin Extended-A case folding and letter
// classes. Invalid bytes decode to U+FFFD.
namespace agerec::utf8 {

std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);
std::string encode(char32_t c);

// Number of code points.
std::size_t length(std::string_view s);

bool is_letter(char32_t c);
bool is_upper(char32_t c);
bool is_digit(char32_t c);
bool is_space(char32_t c);
// Lowercase vowels including accented forms (a e i o u y é è ê ë à â î ï ô û ù ü ÿ œ æ).
bool is_vowel(char32_t c);
bool is_apostrophe(char32_t c);

char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);
std::string to_lower(std::string_view s);

// True when the string contains at least one letter.
bool has_letter(std::string_view s);

}  // namespace agerec::utf8
