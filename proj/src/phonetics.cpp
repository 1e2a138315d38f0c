#include "agerec/phonetics.hpp"

#include <fstream>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

const std::vector<std::string>& phoneme_inventory() {
  static const std::vector<std::string> inventory = {
      // oral vowels
      "i", "e", "ɛ", "a", "ɔ", "o", "u", "y", "ø", "œ", "ə",
      // nasal vowels
      "ɛ̃", "ɑ̃", "ɔ̃", "œ̃",
      // glides
      "j", "w", "ɥ",
      // consonants
      "p", "b", "t", "d", "k", "ɡ", "f", "v", "s", "z", "ʃ", "ʒ", "m", "n", "ɲ", "ŋ", "l", "ʁ"};
  return inventory;
}

namespace {

using Word = std::u32string;

bool vowel(char32_t c) { return utf8::is_vowel(c); }

bool front_vowel(char32_t c) {
  return c == U'e' || c == U'i' || c == U'y' || c == U'é' || c == U'è' || c == U'ê' ||
         c == U'ë' || c == U'î' || c == U'ï';
}

bool consonant(char32_t c) { return utf8::is_letter(c) && !vowel(c); }

bool ends_with(const Word& w, std::u32string_view suffix) {
  return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Rewrites word endings that are silent or have fixed readings, so the main
// scan only sees pronounced letters.
Word strip_silent_ending(Word w) {
  if (w == U"et") return U"é";
  if (w == U"est") return U"è";
  // Monosyllabic determiners: "les", "des", "mes", "ces"...
  if (w.size() == 3 && w[1] == U'e' && w[2] == U's') return Word{w[0], U'é'};
  if (w.size() > 5 && ends_with(w, U"aient")) {
    w.resize(w.size() - 3);
    return w;
  }
  if (w.size() > 3 && (ends_with(w, U"er") || ends_with(w, U"ez"))) {
    w.resize(w.size() - 2);
    w += U"é";
    return w;
  }
  if (w.size() > 2 && ends_with(w, U"et")) {
    w.resize(w.size() - 2);
    w += U"è";
    return w;
  }
  if (w.size() > 3 && ends_with(w, U"es") && consonant(w[w.size() - 3])) {
    w.resize(w.size() - 2);
    return w;
  }
  if (w.size() > 2 && w.back() == U'e' && consonant(w[w.size() - 2])) {
    w.pop_back();
    return w;
  }
  if (w.size() > 2 && w.back() == U'e' && vowel(w[w.size() - 2])) {
    // "-ée", "-ie", "-ue": the e is mute after a vowel.
    w.pop_back();
    return w;
  }
  // Silent final consonants, at most two ("doigts").
  for (int k = 0; k < 2 && w.size() > 1; ++k) {
    const char32_t c = w.back();
    if (c == U's' || c == U't' || c == U'd' || c == U'x' || c == U'z' || c == U'p') {
      w.pop_back();
    } else {
      break;
    }
  }
  return w;
}

struct Scanner {
  const Word& w;
  std::vector<std::string>& out;

  char32_t at(std::size_t i) const { return i < w.size() ? w[i] : U'\0'; }
  bool match(std::size_t i, std::u32string_view g) const {
    return w.compare(i, g.size(), g) == 0 && i + g.size() <= w.size();
  }
  // Nasal reading applies when the nasal consonant is not followed by a
  // vowel or doubled.
  bool nasal_context(std::size_t after) const {
    const char32_t n = at(after);
    return n == U'\0' || (!vowel(n) && n != U'n' && n != U'm' && n != U'h');
  }
  void emit(std::initializer_list<const char*> ps) {
    for (const char* p : ps) out.emplace_back(p);
  }

  void run() {
    std::size_t i = 0;
    while (i < w.size()) i += step(i);
  }

  std::size_t step(std::size_t i) {
    const char32_t c = w[i];
    const char32_t next = at(i + 1);
    const char32_t prev = i > 0 ? w[i - 1] : U'\0';

    // Three-letter graphemes.
    if (match(i, U"eau")) return emit({"o"}), 3;
    if ((match(i, U"ain") || match(i, U"ein")) && nasal_context(i + 3)) return emit({"ɛ̃"}), 3;
    if (match(i, U"oin") && nasal_context(i + 3)) return emit({"w", "ɛ̃"}), 3;
    if (match(i, U"ien") && nasal_context(i + 3)) return emit({"j", "ɛ̃"}), 3;
    if (match(i, U"ill")) {
      if (i > 0 && vowel(prev)) return emit({"j"}), 3;
      if (i == 0) return emit({"i", "l"}), 3;
      return emit({"i", "j"}), 3;
    }
    if (match(i, U"sch")) return emit({"ʃ"}), 3;
    if (match(i, U"tion") && i > 0 && prev != U's') return emit({"s", "j", "ɔ̃"}), 4;

    // Two-letter graphemes.
    // "ou" before a vowel glides: oui, jouer, ouest. Not before "ill" (nouille).
    if (match(i, U"ou") && vowel(at(i + 2)) && !match(i + 2, U"ill")) return emit({"w"}), 2;
    if (match(i, U"ou") || match(i, U"où") || match(i, U"oû")) return emit({"u"}), 2;
    if (match(i, U"oi") || match(i, U"oî")) return emit({"w", "a"}), 2;
    if (match(i, U"ai") || match(i, U"aî") || match(i, U"ei")) return emit({"ɛ"}), 2;
    if (match(i, U"au")) return emit({"o"}), 2;
    if (match(i, U"œu")) return emit({"œ"}), 2;
    if (match(i, U"eu")) {
      const char32_t n = at(i + 2);
      if (n != U'\0' && consonant(n)) return emit({"œ"}), 2;
      return emit({"ø"}), 2;
    }
    if ((match(i, U"on") || match(i, U"om")) && nasal_context(i + 2)) return emit({"ɔ̃"}), 2;
    if ((match(i, U"an") || match(i, U"am") || match(i, U"en") || match(i, U"em")) &&
        nasal_context(i + 2)) {
      return emit({"ɑ̃"}), 2;
    }
    if ((match(i, U"in") || match(i, U"im") || match(i, U"yn") || match(i, U"ym")) &&
        nasal_context(i + 2)) {
      return emit({"ɛ̃"}), 2;
    }
    if ((match(i, U"un") || match(i, U"um")) && nasal_context(i + 2)) return emit({"œ̃"}), 2;
    if (match(i, U"ch")) return emit({"ʃ"}), 2;
    if (match(i, U"gn")) return emit({"ɲ"}), 2;
    if (match(i, U"ph")) return emit({"f"}), 2;
    if (match(i, U"th")) return emit({"t"}), 2;
    if (match(i, U"qu")) return emit({"k"}), 2;
    if (match(i, U"ck")) return emit({"k"}), 2;
    if (match(i, U"gu") && front_vowel(at(i + 2))) return emit({"ɡ"}), 2;
    if (match(i, U"ge") && (at(i + 2) == U'a' || at(i + 2) == U'o' || at(i + 2) == U'u')) {
      return emit({"ʒ"}), 2;
    }
    if (match(i, U"ng") && i + 2 == w.size()) return emit({"ŋ"}), 2;
    if (consonant(c) && next == c && c != U'c') {
      // Doubled consonant reads as one ("ss" stays voiceless).
      step(i + 1);
      return 2;
    }

    // Single letters.
    switch (c) {
      case U'a': case U'à': case U'â': return emit({"a"}), 1;
      case U'é': return emit({"e"}), 1;
      case U'è': case U'ê': case U'ë': return emit({"ɛ"}), 1;
      case U'e': {
        // Open e before a consonant cluster or a final pronounced consonant.
        const char32_t n2 = at(i + 2);
        if (next != U'\0' && consonant(next) && (n2 == U'\0' || consonant(n2))) {
          return emit({"ɛ"}), 1;
        }
        return emit({"ə"}), 1;
      }
      case U'i': case U'î': case U'ï': case U'y':
        if (i > 0 && consonant(prev) && next != U'\0' && vowel(next)) return emit({"j"}), 1;
        return emit({"i"}), 1;
      case U'o': case U'ô': return emit({"o"}), 1;
      case U'u': case U'û': case U'ù': case U'ü':
        if (next == U'i') return emit({"ɥ"}), 1;
        return emit({"y"}), 1;
      case U'œ': return emit({"œ"}), 1;
      case U'æ': return emit({"e"}), 1;
      case U'ÿ': return emit({"i"}), 1;
      case U'b': return emit({"b"}), 1;
      case U'c': return front_vowel(next) ? emit({"s"}) : emit({"k"}), 1;
      case U'ç': return emit({"s"}), 1;
      case U'd': return emit({"d"}), 1;
      case U'f': return emit({"f"}), 1;
      case U'g': return front_vowel(next) ? emit({"ʒ"}) : emit({"ɡ"}), 1;
      case U'h': return 1;
      case U'j': return emit({"ʒ"}), 1;
      case U'k': return emit({"k"}), 1;
      case U'l': return emit({"l"}), 1;
      case U'm': return emit({"m"}), 1;
      case U'n': return emit({"n"}), 1;
      case U'p': return emit({"p"}), 1;
      case U'q': return emit({"k"}), 1;
      case U'r': return emit({"ʁ"}), 1;
      case U's':
        if (i > 0 && vowel(prev) && next != U'\0' && vowel(next)) return emit({"z"}), 1;
        return emit({"s"}), 1;
      case U't': return emit({"t"}), 1;
      case U'v': return emit({"v"}), 1;
      case U'w': return emit({"w"}), 1;
      case U'x': return emit({"k", "s"}), 1;
      case U'z': return emit({"z"}), 1;
      default: return 1;  // letters outside the French alphabet are skipped
    }
  }
};

std::vector<std::u32string> letter_runs(std::string_view text) {
  std::vector<std::u32string> runs;
  std::u32string cur;
  for (char32_t c : utf8::to_lower(utf8::decode(text))) {
    if (utf8::is_letter(c)) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      runs.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) runs.push_back(std::move(cur));
  return runs;
}

void phonemize_word(const Word& raw, std::vector<std::string>& out) {
  const Word w = strip_silent_ending(raw);
  Scanner{w, out}.run();
}

}  // namespace

std::vector<std::string> RulePhonemizer::phonemize(std::string_view text) const {
  std::vector<std::string> out;
  for (const auto& run : letter_runs(text)) phonemize_word(run, out);
  return out;
}

LexiconPhonemizer::LexiconPhonemizer(
    std::unordered_map<std::string, std::vector<std::string>> entries)
    : entries_(std::move(entries)) {}

LexiconPhonemizer LexiconPhonemizer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pronunciation lexicon '" + path + "'");
  std::unordered_map<std::string, std::vector<std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path, line_no, "expected word<TAB>phonemes");
    std::vector<std::string> phonemes;
    std::istringstream ps(line.substr(tab + 1));
    for (std::string p; ps >> p;) phonemes.push_back(p);
    entries[utf8::to_lower(line.substr(0, tab))] = std::move(phonemes);
  }
  return LexiconPhonemizer(std::move(entries));
}

std::vector<std::string> LexiconPhonemizer::phonemize(std::string_view text) const {
  std::vector<std::string> out;
  for (const auto& run : letter_runs(text)) {
    const auto it = entries_.find(utf8::encode(run));
    if (it != entries_.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    } else {
      phonemize_word(run, out);
    }
  }
  return out;
}

std::vector<std::string> phonemize(std::string_view text) {
  static const RulePhonemizer rules;
  return rules.phonemize(text);
}

int syllable_count(std::string_view token) {
  const std::u32string w = utf8::to_lower(utf8::decode(token));
  int groups = 0;
  bool in_group = false;
  bool has_letter = false;
  std::size_t last_group_start = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char32_t c = w[i];
    if (utf8::is_letter(c)) has_letter = true;
    if (utf8::is_vowel(c)) {
      if (!in_group) {
        ++groups;
        last_group_start = i;
      }
      in_group = true;
    } else {
      in_group = false;
    }
  }
  if (!has_letter) return 0;
  if (groups > 1) {
    // Final mute e: "...Ce" or "...Ces" where the last group is the lone e.
    const std::size_t n = w.size();
    const bool final_e = (n >= 2 && w[n - 1] == U'e' && last_group_start == n - 1 &&
                          utf8::is_letter(w[n - 2]) && !utf8::is_vowel(w[n - 2]));
    const bool final_es = (n >= 3 && w[n - 2] == U'e' && w[n - 1] == U's' &&
                           last_group_start == n - 2 && utf8::is_letter(w[n - 3]) &&
                           !utf8::is_vowel(w[n - 3]));
    if (final_e || final_es) --groups;
  }
  return groups < 1 ? 1 : groups;
}

}  // namespace agerec
