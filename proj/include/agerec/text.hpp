#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace agerec {

// Abbreviations that never end a sentence ("M.", "Mme.", "etc.", ...).
const std::vector<std::string>& default_abbreviations();
// One abbreviation per line, with its trailing period. '#' starts a comment.
std::vector<std::string> load_abbreviations(const std::string& path);

// Paragraphs are separated by lines that are empty or whitespace only.
std::vector<std::string> split_paragraphs(std::string_view text);

// Splits on sentence-final punctuation (. ! ? …) followed by whitespace and
// an uppercase letter, a digit or an opening quote/dash. Paragraph breaks
// always end a sentence. A period ending a listed abbreviation or a single
// capital initial is not a boundary.
std::vector<std::string> sentence_split(std::string_view text,
                                        const std::vector<std::string>& abbreviations);
std::vector<std::string> sentence_split(std::string_view text);

// Whitespace tokenization with punctuation detached and French elisions
// ("l'", "qu'", "jusqu'") split off as their own token. Concatenating the
// tokens gives back the input minus whitespace.
std::vector<std::string> tokenize(std::string_view sentence);

// Token made only of punctuation/symbol characters.
bool is_punctuation(std::string_view token);
// Token containing at least one letter.
bool is_word(std::string_view token);

}  // namespace agerec
