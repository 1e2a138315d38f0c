#pragma once

#include <cstdint>
#include <string_view>

#include "agerec/corpus.hpp"

namespace agerec {

// "monotone": sentence length, word length and the share of rare words all
// grow with the mean of the assigned age range.
// "noise": same texts, but difficulty is drawn independently of the age, so
// there is nothing to learn.
Corpus generate_synthetic_corpus(std::uint64_t seed, std::size_t size,
                                 std::string_view profile = "monotone");

// The 32 distinct age ranges observed in the reference corpus.
const std::vector<AgeRange>& observed_age_ranges();

}  // namespace agerec
