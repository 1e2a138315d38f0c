#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "agerec/annotation.hpp"

namespace agerec {

struct ConlluResult {
  std::vector<SentenceAnnotation> sentences;
  std::vector<std::string> warnings;
};

// Reads 10-column CoNLL-U. Multiword-token ranges ("3-4") and empty nodes
// ("3.1") are skipped with a warning. A sentence whose heads do not form a
// tree keeps its other layers and loses HEAD/DEPREL, with a warning.
// Phonemes travel in MISC as "Phon=a,b,c". A "# agerec_capabilities = ..."
// comment, when present, fixes the declared layers; otherwise they are
// inferred from which columns are filled.
ConlluResult read_conllu(std::istream& in, const std::string& source = "<conllu>");
ConlluResult load_conllu(const std::string& path);

void write_conllu(std::ostream& out, const std::vector<SentenceAnnotation>& sentences);
void save_conllu(const std::string& path, const std::vector<SentenceAnnotation>& sentences);

// "Mood=Ind|Tense=Pres" <-> map; "_" is the empty map.
std::map<std::string, std::string> parse_feats_column(const std::string& column);
std::string format_feats_column(const std::map<std::string, std::string>& feats);

}  // namespace agerec
