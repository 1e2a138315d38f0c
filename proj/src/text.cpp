#include "agerec/text.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

const std::vector<std::string>& default_abbreviations() {
  static const std::vector<std::string> list = {
      "M.",    "MM.",    "Mme.",  "Mmes.", "Mlle.", "Mlles.", "Dr.",   "Pr.",   "Me.",
      "St.",   "Ste.",   "etc.",  "cf.",   "p.",    "pp.",    "vol.",  "chap.", "fig.",
      "env.",  "av.",    "apr.",  "J.-C.", "n°.",   "no.",    "tél.",  "ex.",   "éd.",
      "min.",  "max.",   "sq.",   "hab.",  "bd.",   "boul.",  "art.",  "coll.", "Cie."};
  return list;
}

std::vector<std::string> load_abbreviations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open abbreviation list '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_closer(char32_t c) {
  return c == U'»' || c == U'"' || c == U')' || c == U']' || c == U'\'' || c == 0x2019 ||
         c == 0x201D;
}

bool is_opener(char32_t c) {
  return c == U'«' || c == U'"' || c == U'(' || c == U'[' || c == U'—' || c == U'–' ||
         c == U'-' || c == 0x201C;
}

std::u32string trim(std::u32string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && utf8::is_space(s[b])) ++b;
  while (e > b && utf8::is_space(s[e - 1])) --e;
  return std::u32string(s.substr(b, e - b));
}

// Word immediately preceding position `end` (exclusive), including the
// terminator at `end` when it is a period.
std::u32string word_before(const std::u32string& s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !utf8::is_space(s[b - 1])) --b;
  return s.substr(b, dot - b + 1);
}

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> paragraphs;
  std::string current;
  std::size_t pos = 0;
  auto flush = [&] {
    const auto b = current.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) {
      const auto e = current.find_last_not_of(" \t\r\n");
      paragraphs.push_back(current.substr(b, e - b + 1));
    }
    current.clear();
  };
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      flush();
    } else {
      if (!current.empty()) current.push_back('\n');
      current.append(line);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return paragraphs;
}

std::vector<std::string> sentence_split(std::string_view text,
                                        const std::vector<std::string>& abbreviations) {
  std::unordered_set<std::u32string> abbrev;
  for (const auto& a : abbreviations) {
    abbrev.insert(utf8::decode(a));
    abbrev.insert(utf8::to_lower(utf8::decode(a)));
  }
  std::vector<std::string> sentences;
  for (const auto& paragraph : split_paragraphs(text)) {
    const std::u32string s = utf8::decode(paragraph);
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      if (!is_terminator(s[i])) {
        ++i;
        continue;
      }
      const std::size_t term = i;
      std::size_t j = i + 1;
      while (j < s.size() && (is_terminator(s[j]) || is_closer(s[j]))) ++j;
      if (j >= s.size()) break;
      if (!utf8::is_space(s[j])) {
        i = j;
        continue;
      }
      std::size_t k = j;
      while (k < s.size() && utf8::is_space(s[k])) ++k;
      if (k >= s.size()) break;
      char32_t next = s[k];
      if (is_opener(next)) {
        std::size_t m = k + 1;
        while (m < s.size() && utf8::is_space(s[m])) ++m;
        next = m < s.size() ? s[m] : U' ';
      }
      bool boundary = utf8::is_upper(next) || utf8::is_digit(next) || is_opener(s[k]);
      if (boundary && s[term] == U'.' && j == term + 1) {
        const std::u32string word = word_before(s, term);
        const bool initial = word.size() == 2 && utf8::is_upper(word[0]);
        if (initial || abbrev.count(word) || abbrev.count(utf8::to_lower(word))) boundary = false;
      }
      if (boundary) {
        auto piece = trim(std::u32string_view(s).substr(start, j - start));
        if (!piece.empty()) sentences.push_back(utf8::encode(piece));
        start = k;
      }
      i = k;
    }
    auto tail = trim(std::u32string_view(s).substr(start));
    if (!tail.empty()) sentences.push_back(utf8::encode(tail));
  }
  return sentences;
}

std::vector<std::string> sentence_split(std::string_view text) {
  return sentence_split(text, default_abbreviations());
}

namespace {

const std::unordered_set<std::u32string>& elision_prefixes() {
  static const std::unordered_set<std::u32string> set = {
      U"l", U"d", U"j", U"m", U"n", U"s", U"t", U"c", U"ç", U"qu", U"jusqu", U"lorsqu", U"puisqu",
      U"quoiqu", U"presqu", U"quelqu"};
  return set;
}

bool is_word_char(char32_t c) { return utf8::is_letter(c) || utf8::is_digit(c); }

// Splits a whitespace-free chunk into tokens.
void tokenize_chunk(const std::u32string& chunk, std::vector<std::string>& out) {
  std::size_t b = 0, e = chunk.size();
  std::vector<std::string> trailing;
  // Runs of periods ("...") stay one token; other symbols stand alone.
  while (b < e && !is_word_char(chunk[b])) {
    std::size_t len = 1;
    if (chunk[b] == U'.') {
      while (b + len < e && chunk[b + len] == U'.') ++len;
    }
    out.push_back(utf8::encode(chunk.substr(b, len)));
    b += len;
  }
  while (e > b && !is_word_char(chunk[e - 1])) {
    std::size_t len = 1;
    if (chunk[e - 1] == U'.') {
      while (e - len > b && chunk[e - len - 1] == U'.') ++len;
    }
    trailing.push_back(utf8::encode(chunk.substr(e - len, len)));
    e -= len;
  }
  // Core: split elisions and embedded punctuation.
  std::size_t p = b;
  std::size_t piece_start = b;
  while (p < e) {
    const char32_t c = chunk[p];
    if (utf8::is_apostrophe(c)) {
      const std::u32string prefix = utf8::to_lower(chunk.substr(piece_start, p - piece_start));
      if (elision_prefixes().count(prefix) && p + 1 < e) {
        out.push_back(utf8::encode(chunk.substr(piece_start, p + 1 - piece_start)));
        piece_start = p + 1;
      }
      ++p;
      continue;
    }
    const bool splitter = c == U',' || c == U';' || c == U':' || c == U'!' || c == U'?' ||
                          c == U'«' || c == U'»' || c == U'"' || c == U'(' || c == U')' ||
                          c == U'[' || c == U']' || c == U'…' || c == U'/';
    const bool numeric = (c == U',' || c == U'.') && p > b && p + 1 < e &&
                         utf8::is_digit(chunk[p - 1]) && utf8::is_digit(chunk[p + 1]);
    if (splitter && !numeric) {
      if (p > piece_start) out.push_back(utf8::encode(chunk.substr(piece_start, p - piece_start)));
      out.push_back(utf8::encode(chunk.substr(p, 1)));
      piece_start = p + 1;
    }
    ++p;
  }
  if (e > piece_start) out.push_back(utf8::encode(chunk.substr(piece_start, e - piece_start)));
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  const std::u32string s = utf8::decode(sentence);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && utf8::is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !utf8::is_space(s[j])) ++j;
    if (j > i) tokenize_chunk(s.substr(i, j - i), tokens);
    i = j;
  }
  return tokens;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char32_t c : utf8::decode(token)) {
    if (is_word_char(c)) return false;
  }
  return true;
}

bool is_word(std::string_view token) { return utf8::has_letter(token); }

}  // namespace agerec
