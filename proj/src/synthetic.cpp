#include "agerec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "agerec/error.hpp"

namespace agerec {

const std::vector<AgeRange>& observed_age_ranges() {
  static const std::vector<AgeRange> ranges = [] {
    const int pairs[][2] = {{0, 2},  {0, 3},   {2, 4},   {2, 7},   {3, 5},   {3, 6},   {3, 7},
                            {3, 8},  {3, 9},   {4, 6},   {4, 7},   {4, 8},   {4, 9},   {5, 7},
                            {5, 8},  {5, 9},   {5, 12},  {6, 8},   {6, 9},   {6, 12},  {7, 11},
                            {7, 12}, {8, 10},  {8, 11},  {8, 12},  {8, 13},  {10, 12}, {10, 13},
                            {10, 14}, {11, 13}, {12, 14}, {14, 18}};
    std::vector<AgeRange> r;
    for (const auto& p : pairs) r.push_back(AgeRange{double(p[0]), double(p[1])});
    return r;
  }();
  return ranges;
}

namespace {

struct Pools {
  std::vector<std::string_view> nouns, verbs, adjectives;
};

// All words are in the bundled frequency lexicon, so rare words really get
// low log-probabilities.
const Pools kCommon{
    {"chat", "chien", "arbre", "soleil", "lune", "fleur", "table", "lit", "pomme", "jardin",
     "oiseau", "balle", "gâteau", "lapin", "maman", "papa", "bébé", "fille", "garçon", "maison",
     "école", "livre", "jeu", "ami", "mer"},
    {"mange", "joue", "dort", "court", "saute", "chante", "regarde", "aime", "voit"},
    {"petit", "grand", "rouge", "bleu", "joli", "gentil", "content", "beau", "doux"}};

const Pools kRare{
    {"institution", "parlement", "révolution", "température", "électricité", "constitution",
     "architecture", "démocratie", "hypothèse", "phénomène", "mécanisme", "philosophie",
     "législation", "consommation", "infrastructure", "écosystème", "biodiversité",
     "photosynthèse", "hémisphère"},
    {"considère", "représente", "détermine", "influence", "constitue", "transforme",
     "caractérise", "engendre", "préconise"},
    {"considérable", "fondamental", "complexe", "économique", "international", "historique",
     "scientifique", "ambigu"}};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  // Portable bounded draws: the distributions in <random> are not
  // guaranteed to produce the same sequence across standard libraries.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 rng_;
};

std::string pick(Draw& d, const std::vector<std::string_view>& common,
                 const std::vector<std::string_view>& rare, double rare_rate) {
  const auto& pool = d.chance(rare_rate) ? rare : common;
  return std::string(pool[d.below(pool.size())]);
}

std::string make_sentence(Draw& d, double difficulty) {
  const double rare = 0.03 + 0.6 * difficulty;
  const std::size_t target = 4 + static_cast<std::size_t>(std::lround(14 * difficulty)) + d.below(3);
  auto noun = [&] { return pick(d, kCommon.nouns, kRare.nouns, rare); };
  auto verb = [&] { return pick(d, kCommon.verbs, kRare.verbs, rare); };
  auto adj = [&] { return pick(d, kCommon.adjectives, kRare.adjectives, rare); };

  std::vector<std::string> words = {"le", noun(), verb()};
  while (words.size() < target) {
    switch (d.below(4)) {
      case 0: words.insert(words.end(), {"le", noun()}); break;
      case 1: words.push_back(adj()); break;
      case 2: words.insert(words.end(), {"et", "le", noun()}); break;
      default: words.insert(words.end(), {"qui", verb()}); break;
    }
  }
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s += ' ';
    s += words[i];
  }
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s + ".";
}

}  // namespace

Corpus generate_synthetic_corpus(std::uint64_t seed, std::size_t size, std::string_view profile) {
  if (size == 0) throw InvalidArgument("synthetic corpus size must be positive");
  const bool monotone = profile == "monotone";
  if (!monotone && profile != "noise") {
    throw InvalidArgument("unknown difficulty profile '" + std::string(profile) +
                          "' (monotone, noise)");
  }
  const auto& ranges = observed_age_ranges();
  const Genre genres[] = {Genre::Encyclopedia, Genre::Newspaper, Genre::Fiction};
  Draw d(seed);
  Corpus corpus;
  for (std::size_t i = 0; i < size; ++i) {
    Document doc;
    char id[32];
    std::snprintf(id, sizeof id, "syn-%04zu", i + 1);
    doc.id = id;
    doc.age = ranges[d.below(ranges.size())];
    doc.genre = genres[d.below(3)];
    doc.source = "synthetic:" + std::string(profile);
    // Range means run from 1 to 16.
    const double scaled = std::clamp((doc.age.mean() - 1.0) / 15.0, 0.0, 1.0);
    const double difficulty = monotone ? scaled : d.unit();
    const std::size_t n = 4 + d.below(5);
    for (std::size_t k = 0; k < n; ++k) {
      doc.sentences.push_back(make_sentence(d, difficulty));
      if (k) doc.text += (k % 3 == 0) ? "\n\n" : " ";
      doc.text += doc.sentences.back();
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace agerec
