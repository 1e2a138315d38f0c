#include "agerec/resources.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/phonetics.hpp"
#include "agerec/text.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

namespace fs = std::filesystem;

const std::vector<std::string>& connector_categories() {
  static const std::vector<std::string> names = {
      "Addition",    "Time",        "Goal",        "Cause",        "Comparison",    "Concession",
      "Conclusion",  "Condition",   "Consequence", "Enumeration",  "Explanation",   "Illustration",
      "Justification", "Opposition", "Restriction", "Exclusion"};
  return names;
}

const std::vector<std::string>& emotion_names() {
  // The second "pride" of the source list is kept as a distinct class
  // under the name Haughtiness.
  static const std::vector<std::string> names = {
      "Neutral",     "Admiration",   "Love",       "Appeasement", "Daring",
      "Anger",       "Behavior",     "Guilt",      "Disgust",     "Displeasure",
      "Desire",      "Embarrassment", "Empathy",   "Pride",       "Impassibility",
      "Inhumanity",  "Jealousy",     "Joy",        "Contempt",    "Unspecified",
      "Haughtiness", "Fear",         "Resentment", "Surprise",    "Sadness"};
  return names;
}

namespace {

// Roughly frequency-ordered French words; log-probabilities follow a Zipf
// law ln(0.1 / rank).
constexpr std::string_view kWordsByFrequency = R"(
de la le et les des en un du une que est pour qui dans a par plus pas au sur ne se
il ce sont elle on ou avec son il mais je nous vous ils elles sa ses été être comme
tout fait aux leur cette y bien ont sans peut deux tous lui ces entre aussi avoir dont
même très était faire après ans encore alors avait fut où donc si autres ainsi depuis
moi toi mon ma mes ton ta tes notre votre nos vos leurs quand puis sous trop moins
an jour temps homme femme enfant monde vie main chose fois maison père mère ami yeux
tête eau nuit porte pays ville école livre jeu chat chien arbre soleil lune fleur
table lit pomme jardin oiseau balle gâteau lapin maman papa bébé fille garçon mer
dit va voir vient prend donne mange joue dort court saute chante regarde aime voit
grand petit bon beau belle jeune vieux nouveau joli gentil rouge bleu vert content
heureux triste noir blanc long haut fort doux chaud froid premier dernier autre seul
toujours jamais souvent ici là maintenant hier demain ensuite enfin beaucoup peu
parce car puisque lorsque pendant avant contre vers chez cependant pourtant toutefois
histoire question pouvoir travail guerre partie état gouvernement pays politique
exemple effet cas raison groupe lieu place force moment famille idée société
problème système service science nature recherche développement production ordre
public national social économique politique international historique scientifique
analyse considère représente détermine influence constitue transforme caractérise
institution parlement révolution température électricité constitution architecture
démocratie hypothèse phénomène mécanisme philosophie législation consommation
considérable fondamental complexe ambigu hémisphère infrastructure engendre
écosystème biodiversité photosynthèse préconise
)";

// Stop-word list (114 entries).
constexpr std::string_view kStopWords = R"(
alors au aucuns aussi autre avant avec avoir bon car ce cela ces ceux chaque ci comme
comment dans des du dedans dehors depuis devrait doit donc début elle elles en encore
est et eu fait faites fois font hors ici il ils je juste la le les leur là ma
maintenant mais mes mine moins mon mot même ni nommés notre nous ou où par parce pas
peut peu plupart pour pourquoi quand que quel quelle quelles quels qui sa sans ses
seulement si sien son sont sous soyez sujet sur ta tandis tellement tels tes ton tous
tout trop très tu voient vont votre vous vu ça étaient état étions été être
)";

// Visually confusable lowercase letter pairs with a similarity score.
constexpr std::string_view kConfusion = R"(
b d 0.50
p q 0.50
m n 0.45
n u 0.40
i l 0.40
i j 0.35
c e 0.35
c o 0.35
a o 0.30
h n 0.30
f t 0.30
v w 0.30
v y 0.25
u v 0.25
n r 0.25
e o 0.25
b h 0.20
g q 0.20
a e 0.20
l t 0.20
a d 0.15
g y 0.15
h k 0.15
b p 0.10
d q 0.10
s z 0.10
)";

constexpr std::string_view kConnectors = R"(
et|Addition
de plus|Addition
en outre|Addition
également|Addition
ainsi que|Addition
par ailleurs|Addition
d' ailleurs|Addition
quand|Time
lorsque|Time
puis|Time
ensuite|Time
pendant que|Time
avant que|Time
après que|Time
dès que|Time
depuis que|Time
aussitôt|Time
pour que|Goal
afin que|Goal
afin de|Goal
dans le but de|Goal
en vue de|Goal
parce que|Cause
car|Cause
puisque|Cause
à cause de|Cause
grâce à|Cause
en raison de|Cause
comme si|Comparison
de même|Comparison
autant que|Comparison
pareillement|Comparison
semblablement|Comparison
de la même façon|Comparison
bien que|Concession
quoique|Concession
malgré|Concession
même si|Concession
certes|Concession
néanmoins|Concession
donc|Conclusion
en conclusion|Conclusion
finalement|Conclusion
bref|Conclusion
en somme|Conclusion
en résumé|Conclusion
pour conclure|Conclusion
si|Condition
à condition que|Condition
pourvu que|Condition
au cas où|Condition
à moins que|Condition
sinon|Condition
c' est pourquoi|Consequence
par conséquent|Consequence
de sorte que|Consequence
si bien que|Consequence
en conséquence|Consequence
d' où|Consequence
d' abord|Enumeration
premièrement|Enumeration
deuxièmement|Enumeration
troisièmement|Enumeration
enfin|Enumeration
en premier lieu|Enumeration
en dernier lieu|Enumeration
c' est-à-dire|Explanation
en effet|Explanation
autrement dit|Explanation
à savoir|Explanation
par exemple|Illustration
notamment|Illustration
entre autres|Illustration
en particulier|Illustration
comme|Illustration
du fait que|Justification
vu que|Justification
étant donné que|Justification
compte tenu de|Justification
d' autant plus que|Justification
mais|Opposition
cependant|Opposition
pourtant|Opposition
au contraire|Opposition
en revanche|Opposition
tandis que|Opposition
alors que|Opposition
par contre|Opposition
toutefois|Opposition
sauf|Restriction
seulement|Restriction
excepté|Restriction
hormis|Restriction
uniquement|Restriction
du moins|Restriction
ni|Exclusion
sans|Exclusion
sans que|Exclusion
au lieu de|Exclusion
plutôt que|Exclusion
à l' exception de|Exclusion
)";

constexpr std::string_view kEmotions = R"(
calme|Neutral
ordinaire|Neutral
admirer|Admiration
admire|Admiration
merveilleux|Admiration
magnifique|Admiration
amour|Love
aime|Love
aimer|Love
tendresse|Love
apaisé|Appeasement
soulagement|Appeasement
tranquille|Appeasement
audace|Daring
courage|Daring
ose|Daring
colère|Anger
furieux|Anger
rage|Anger
poli|Behavior
sage|Behavior
conduite|Behavior
faute|Guilt
coupable|Guilt
remords|Guilt
dégoût|Disgust
beurk|Disgust
répugnant|Disgust
mécontent|Displeasure
agacé|Displeasure
déplaisir|Displeasure
envie|Desire
désir|Desire
veut|Desire
gêne|Embarrassment
honte|Embarrassment
embarrassé|Embarrassment
compassion|Empathy
pitié|Empathy
console|Empathy
fier|Pride
fierté|Pride
impassible|Impassibility
indifférent|Impassibility
cruel|Inhumanity
barbare|Inhumanity
jaloux|Jealousy
jalousie|Jealousy
joie|Joy
heureux|Joy
rire|Joy
content|Joy
mépris|Contempt
méprise|Contempt
émotion|Unspecified
ressent|Unspecified
orgueil|Haughtiness
hautain|Haughtiness
arrogant|Haughtiness
peur|Fear
effrayé|Fear
terreur|Fear
rancune|Resentment
rancœur|Resentment
surprise|Surprise
étonné|Surprise
soudain|Surprise
triste|Sadness
tristesse|Sadness
pleure|Sadness
chagrin|Sadness
)";

constexpr std::string_view kSentiment = R"(
bon 0.7 0.6
bien 0.6 0.5
beau 0.8 0.9
joli 0.6 0.8
gentil 0.6 0.7
heureux 0.8 1.0
content 0.6 0.8
merveilleux 1.0 1.0
magnifique 1.0 1.0
super 0.6 0.7
agréable 0.5 0.6
drôle 0.4 0.8
amour 0.5 0.6
aime 0.5 0.6
joie 0.8 0.8
calme 0.2 0.4
mauvais -0.7 0.7
méchant -0.6 0.8
triste -0.5 1.0
terrible -1.0 1.0
horrible -1.0 1.0
laid -0.7 0.9
peur -0.4 0.6
colère -0.6 0.8
malheureux -0.7 1.0
difficile -0.3 0.5
dangereux -0.5 0.6
faux -0.4 0.6
grand 0.1 0.4
petit -0.1 0.4
nouveau 0.1 0.5
vieux -0.1 0.3
important 0.4 0.8
simple 0.0 0.3
)";

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    f(line);
  }
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join_tokens(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// Connector phrases are stored as the space-joined lowercase tokens the
// tokenizer produces, so matching happens on token sequences.
std::string connector_key(std::string_view phrase) {
  return join_tokens(tokenize(utf8::to_lower(phrase)));
}

int index_of(const std::vector<std::string>& names, const std::string& name) {
  const std::string lower = utf8::to_lower(name);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (utf8::to_lower(names[i]) == lower) return static_cast<int>(i);
  }
  return -1;
}

char32_t single_letter(const std::string& s, const std::string& where) {
  const auto cps = utf8::decode(s);
  if (cps.size() != 1) throw ParseError(where + ": expected a single letter, got '" + s + "'");
  return utf8::to_lower(cps[0]);
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a number, got '" + s + "'");
  }
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> cols;
  std::string col;
  std::istringstream in(line);
  while (std::getline(in, col, '\t')) cols.push_back(col);
  return cols;
}

// Letters compare on their unaccented lowercase base.
char32_t base_letter(char32_t c) {
  c = utf8::to_lower(c);
  switch (c) {
    case U'à': case U'â': case U'ä': return U'a';
    case U'é': case U'è': case U'ê': case U'ë': return U'e';
    case U'î': case U'ï': return U'i';
    case U'ô': case U'ö': return U'o';
    case U'ù': case U'û': case U'ü': return U'u';
    case U'ÿ': return U'y';
    case U'ç': return U'c';
    default: return c;
  }
}

void add_connector(ResourceBundle& b, const std::string& phrase, int category) {
  const std::string key = connector_key(phrase);
  if (!key.empty()) b.connectors[key] = category;
}

}  // namespace

void ResourceBundle::finalize() {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& [w, lp] : log_prob) lowest = std::min(lowest, lp);
  oov_log_prob = std::isfinite(lowest) ? lowest - 2.0 : std::log(1e-7);
  longest_connector = 1;
  for (const auto& [phrase, cat] : connectors) {
    const std::size_t n = std::count(phrase.begin(), phrase.end(), ' ') + 1;
    longest_connector = std::max(longest_connector, n);
  }
}

ResourceBundle ResourceBundle::bundled() {
  ResourceBundle b;
  const auto words = words_of(kWordsByFrequency);
  for (std::size_t r = 0; r < words.size(); ++r) {
    b.log_prob.emplace(words[r], std::log(0.1 / static_cast<double>(r + 1)));
  }
  for (const auto& w : words_of(kStopWords)) b.stop_words.insert(w);
  for_each_line(kConfusion, [&](const std::string& line) {
    std::istringstream in(line);
    std::string x, y;
    double s = 0;
    in >> x >> y >> s;
    const char32_t a = utf8::decode(x)[0], c = utf8::decode(y)[0];
    b.confusion[{a, c}] = s;
    b.confusion[{c, a}] = s;
  });
  for (const auto& p : phoneme_inventory()) {
    b.phoneme_prob[p] = 1.0 / static_cast<double>(phoneme_inventory().size());
  }
  for_each_line(kConnectors, [&](const std::string& line) {
    const auto bar = line.find('|');
    add_connector(b, line.substr(0, bar), index_of(connector_categories(), line.substr(bar + 1)));
  });
  for_each_line(kEmotions, [&](const std::string& line) {
    const auto bar = line.find('|');
    b.emotions[line.substr(0, bar)] = index_of(emotion_names(), line.substr(bar + 1));
  });
  for_each_line(kSentiment, [&](const std::string& line) {
    std::istringstream in(line);
    std::string w;
    double pol = 0, subj = 0;
    in >> w >> pol >> subj;
    b.sentiment[w] = {pol, subj};
  });
  b.warnings = {"using the bundled sample lexicons",
                "phoneme probabilities are uniform; ordinariness is uninformative"};
  b.finalize();
  return b;
}

double ResourceBundle::word_log_prob(const std::string& lower_word) const {
  const auto it = log_prob.find(lower_word);
  return it == log_prob.end() ? oov_log_prob : it->second;
}

double ResourceBundle::grapheme_confusion(char32_t x, char32_t y) const {
  const auto it = confusion.find({base_letter(x), base_letter(y)});
  return it == confusion.end() ? 0.0 : it->second;
}

double ResourceBundle::phoneme_probability(const std::string& phoneme) const {
  const auto it = phoneme_prob.find(phoneme);
  return it == phoneme_prob.end() ? 0.0 : it->second;
}

ResourceBundle load_resources(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("resource directory '" + dir + "' does not exist");
  ResourceBundle b = ResourceBundle::bundled();
  b.warnings.clear();
  auto open = [&](const char* name, auto&& parse_line, auto&& reset) {
    const fs::path path = fs::path(dir) / name;
    std::ifstream in(path);
    if (!in) {
      b.warnings.push_back(std::string(name) + " not found in '" + dir +
                           "'; using the bundled sample");
      return;
    }
    reset();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      parse_line(line, path.string() + ":" + std::to_string(line_no));
    }
  };

  open("word_logprob.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 2) throw ParseError(where + ": expected word<TAB>logprob");
         const double lp = parse_number(cols[1], where);
         if (lp > 0) throw ParseError(where + ": log probability must be <= 0");
         b.log_prob[utf8::to_lower(cols[0])] = lp;
       },
       [&] { b.log_prob.clear(); });
  open("stopwords.txt",
       [&](const std::string& line, const std::string&) {
         const auto b0 = line.find_first_not_of(" \t");
         const auto e0 = line.find_last_not_of(" \t");
         b.stop_words.insert(utf8::to_lower(line.substr(b0, e0 - b0 + 1)));
       },
       [&] { b.stop_words.clear(); });
  open("grapheme_confusion.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 3) throw ParseError(where + ": expected letter<TAB>letter<TAB>score");
         const char32_t x = single_letter(cols[0], where), y = single_letter(cols[1], where);
         const double s = parse_number(cols[2], where);
         b.confusion[{x, y}] = s;
         b.confusion[{y, x}] = s;
       },
       [&] { b.confusion.clear(); });
  open("phoneme_prob.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 2) throw ParseError(where + ": expected phoneme<TAB>probability");
         const double p = parse_number(cols[1], where);
         if (p < 0 || p > 1) throw ParseError(where + ": probability outside [0,1]");
         b.phoneme_prob[cols[0]] = p;
       },
       [&] { b.phoneme_prob.clear(); });
  open("connectors.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 2) throw ParseError(where + ": expected phrase<TAB>category");
         const int cat = index_of(connector_categories(), cols[1]);
         if (cat < 0) throw ParseError(where + ": unknown connector category '" + cols[1] + "'");
         add_connector(b, cols[0], cat);
       },
       [&] { b.connectors.clear(); });
  open("emotions.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 2) throw ParseError(where + ": expected word<TAB>emotion");
         const int e = index_of(emotion_names(), cols[1]);
         if (e < 0) throw ParseError(where + ": unknown emotion '" + cols[1] + "'");
         b.emotions[utf8::to_lower(cols[0])] = e;
       },
       [&] { b.emotions.clear(); });
  open("sentiment.tsv",
       [&](const std::string& line, const std::string& where) {
         const auto cols = split_tab(line);
         if (cols.size() != 3) {
           throw ParseError(where + ": expected word<TAB>polarity<TAB>subjectivity");
         }
         const double pol = parse_number(cols[1], where), subj = parse_number(cols[2], where);
         if (pol < -1 || pol > 1 || subj < 0 || subj > 1) {
           throw ParseError(where + ": polarity must be in [-1,1] and subjectivity in [0,1]");
         }
         b.sentiment[utf8::to_lower(cols[0])] = {pol, subj};
       },
       [&] { b.sentiment.clear(); });

  if (b.stop_words.size() != 114) {
    b.warnings.push_back("stop-word list has " + std::to_string(b.stop_words.size()) +
                         " entries instead of 114");
  }
  bool uniform = true;
  for (const auto& [p, prob] : b.phoneme_prob) {
    uniform = uniform && std::abs(prob - 1.0 / phoneme_inventory().size()) < 1e-12;
  }
  if (uniform) b.warnings.push_back("phoneme probabilities are uniform; ordinariness is uninformative");
  b.finalize();
  return b;
}

void save_resources(const ResourceBundle& bundle, const std::string& dir) {
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw Error("cannot write '" + (fs::path(dir) / name).string() + "'");
    out << std::setprecision(17);
    return out;
  };
  auto sorted = [](const auto& map) {
    std::vector<std::pair<std::string, typename std::decay_t<decltype(map)>::mapped_type>> v(
        map.begin(), map.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  {
    auto out = open("word_logprob.tsv");
    for (const auto& [w, lp] : sorted(bundle.log_prob)) out << w << '\t' << lp << '\n';
  }
  {
    auto out = open("stopwords.txt");
    std::vector<std::string> words(bundle.stop_words.begin(), bundle.stop_words.end());
    std::sort(words.begin(), words.end());
    for (const auto& w : words) out << w << '\n';
  }
  {
    auto out = open("grapheme_confusion.tsv");
    for (const auto& [pair, s] : bundle.confusion) {
      if (pair.first <= pair.second) {
        out << utf8::encode(pair.first) << '\t' << utf8::encode(pair.second) << '\t' << s << '\n';
      }
    }
  }
  {
    auto out = open("phoneme_prob.tsv");
    for (const auto& [p, prob] : sorted(bundle.phoneme_prob)) out << p << '\t' << prob << '\n';
  }
  {
    auto out = open("connectors.tsv");
    for (const auto& [phrase, cat] : sorted(bundle.connectors)) {
      out << phrase << '\t' << connector_categories()[static_cast<std::size_t>(cat)] << '\n';
    }
  }
  {
    auto out = open("emotions.tsv");
    for (const auto& [w, e] : sorted(bundle.emotions)) {
      out << w << '\t' << emotion_names()[static_cast<std::size_t>(e)] << '\n';
    }
  }
  {
    auto out = open("sentiment.tsv");
    for (const auto& [w, ps] : sorted(bundle.sentiment)) {
      out << w << '\t' << ps.first << '\t' << ps.second << '\n';
    }
  }
}

}  // namespace agerec
