#include "agerec/annotation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "agerec/error.hpp"
#include "agerec/text.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

namespace {

constexpr std::pair<Capability, std::string_view> kCapabilityNames[] = {
    {Capability::Pos, "pos"},
    {Capability::Lemma, "lemma"},
    {Capability::Feats, "feats"},
    {Capability::Dependency, "dependency"},
    {Capability::Phoneme, "phoneme"},
};

}  // namespace

std::string Capabilities::to_string() const {
  std::string out;
  for (const auto& [cap, name] : kCapabilityNames) {
    if (!has(cap)) continue;
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

Capabilities Capabilities::parse(std::string_view text) {
  Capabilities caps;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    bool found = false;
    for (const auto& [cap, name] : kCapabilityNames) {
      if (item == name) {
        caps = caps.with(cap);
        found = true;
      }
    }
    if (!found) throw InvalidArgument("unknown capability '" + item + "'");
  }
  return caps;
}

bool is_valid_tree(const std::vector<Token>& tokens) {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) return true;
  int roots = 0;
  for (const auto& t : tokens) {
    if (t.head < 0 || t.head > n) return false;
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return false;
  for (int start = 0; start < n; ++start) {
    int cur = start + 1;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) return false;  // cycle
      cur = tokens[static_cast<std::size_t>(cur - 1)].head;
    }
  }
  return true;
}

void check_contract(const SentenceAnnotation& a) {
  const auto& caps = a.capabilities;
  auto fail = [&](const std::string& what) {
    throw InvalidArgument("annotation '" + a.sent_id + "' violates its capabilities: " + what);
  };
  bool any_word = false, any_phoneme = false;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const Token& t = a.tokens[i];
    const std::string where = " (token " + std::to_string(i + 1) + " '" + t.form + "')";
    if (caps.has(Capability::Pos) == t.upos.empty()) fail("part-of-speech layer" + where);
    if (caps.has(Capability::Lemma) == t.lemma.empty()) fail("lemma layer" + where);
    if (!caps.has(Capability::Feats) && !t.feats.empty()) fail("undeclared features" + where);
    if (!caps.has(Capability::Dependency) && (t.head != -1 || !t.deprel.empty())) {
      fail("undeclared dependency" + where);
    }
    if (!caps.has(Capability::Phoneme) && !t.phonemes.empty()) fail("undeclared phonemes" + where);
    any_word = any_word || is_word(t.form);
    any_phoneme = any_phoneme || !t.phonemes.empty();
  }
  if (caps.has(Capability::Dependency) && !is_valid_tree(a.tokens)) fail("heads do not form a tree");
  if (caps.has(Capability::Phoneme) && any_word && !any_phoneme) fail("phoneme layer is empty");
}

void add_phonemes(SentenceAnnotation& annotation, const Phonemizer& phonemizer) {
  for (auto& t : annotation.tokens) {
    t.phonemes = is_word(t.form) ? phonemizer.phonemize(t.form) : std::vector<std::string>{};
  }
  annotation.capabilities = annotation.capabilities.with(Capability::Phoneme);
}

SentenceAnnotation Annotator::annotate_sentence(std::string_view sentence) const {
  SentenceAnnotation a = annotate(tokenize(sentence));
  a.text = std::string(sentence);
  return a;
}

// ---------------------------------------------------------------------------
// Heuristic French tagger

namespace {

struct LexEntry {
  const char* upos;
  const char* lemma;
  const char* feats;
};

using Lexicon = std::unordered_map<std::string, LexEntry>;

constexpr const char* kPres = "Mood=Ind|Tense=Pres|VerbForm=Fin";
constexpr const char* kImp = "Mood=Ind|Tense=Imp|VerbForm=Fin";
constexpr const char* kPast = "Mood=Ind|Tense=Past|VerbForm=Fin";
constexpr const char* kFut = "Mood=Ind|Tense=Fut|VerbForm=Fin";
constexpr const char* kCnd = "Mood=Cnd|Tense=Pres|VerbForm=Fin";
constexpr const char* kSub = "Mood=Sub|Tense=Pres|VerbForm=Fin";

// Conjugated forms listed as (form, person+number code, tense feats).
struct Paradigm {
  const char* lemma;
  const char* upos;
  std::vector<std::pair<const char*, const char*>> forms;  // form, "1S".."3P" or "Inf"/"Part"
  const char* feats;
};

std::map<std::string, std::string> parse_feats(std::string_view s) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto bar = s.find('|', pos);
    if (bar == std::string_view::npos) bar = s.size();
    const auto item = s.substr(pos, bar - pos);
    const auto eq = item.find('=');
    if (eq != std::string_view::npos) {
      out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    pos = bar + 1;
  }
  return out;
}

void add_person(std::map<std::string, std::string>& feats, std::string_view code) {
  if (code.size() != 2) return;
  feats["Person"] = std::string(1, code[0]);
  feats["Number"] = code[1] == 'S' ? "Sing" : "Plur";
}

struct VerbForm {
  std::string lemma;
  std::string upos;
  std::map<std::string, std::string> feats;
};

const std::unordered_map<std::string, VerbForm>& irregular_verbs() {
  static const std::unordered_map<std::string, VerbForm> table = [] {
    std::unordered_map<std::string, VerbForm> t;
    auto add = [&](const char* lemma, const char* upos, const char* feats,
                   std::initializer_list<std::pair<const char*, const char*>> forms) {
      for (const auto& [form, code] : forms) {
        VerbForm vf{lemma, upos, parse_feats(feats)};
        add_person(vf.feats, code);
        t.emplace(form, std::move(vf));
      }
    };
    const auto inf = parse_feats("VerbForm=Inf");
    const auto part = parse_feats("Tense=Past|VerbForm=Part");
    // être
    add("être", "AUX", kPres, {{"suis", "1S"}, {"es", "2S"}, {"est", "3S"}, {"sommes", "1P"}, {"êtes", "2P"}, {"sont", "3P"}});
    add("être", "AUX", kImp, {{"étais", "1S"}, {"était", "3S"}, {"étions", "1P"}, {"étiez", "2P"}, {"étaient", "3P"}});
    add("être", "AUX", kPast, {{"fus", "1S"}, {"fut", "3S"}, {"fûmes", "1P"}, {"fûtes", "2P"}, {"furent", "3P"}});
    add("être", "AUX", kFut, {{"serai", "1S"}, {"seras", "2S"}, {"sera", "3S"}, {"serons", "1P"}, {"serez", "2P"}, {"seront", "3P"}});
    add("être", "AUX", kCnd, {{"serais", "1S"}, {"serait", "3S"}, {"serions", "1P"}, {"seriez", "2P"}, {"seraient", "3P"}});
    add("être", "AUX", kSub, {{"sois", "1S"}, {"soit", "3S"}, {"soyons", "1P"}, {"soyez", "2P"}, {"soient", "3P"}});
    t.emplace("être", VerbForm{"être", "AUX", inf});
    t.emplace("été", VerbForm{"être", "AUX", part});
    // avoir
    add("avoir", "AUX", kPres, {{"ai", "1S"}, {"as", "2S"}, {"a", "3S"}, {"avons", "1P"}, {"avez", "2P"}, {"ont", "3P"}});
    add("avoir", "AUX", kImp, {{"avais", "1S"}, {"avait", "3S"}, {"avions", "1P"}, {"aviez", "2P"}, {"avaient", "3P"}});
    add("avoir", "AUX", kPast, {{"eus", "1S"}, {"eut", "3S"}, {"eûmes", "1P"}, {"eûtes", "2P"}, {"eurent", "3P"}});
    add("avoir", "AUX", kFut, {{"aurai", "1S"}, {"auras", "2S"}, {"aura", "3S"}, {"aurons", "1P"}, {"aurez", "2P"}, {"auront", "3P"}});
    add("avoir", "AUX", kCnd, {{"aurais", "1S"}, {"aurait", "3S"}, {"aurions", "1P"}, {"auriez", "2P"}, {"auraient", "3P"}});
    add("avoir", "AUX", kSub, {{"aie", "1S"}, {"aies", "2S"}, {"ait", "3S"}, {"ayons", "1P"}, {"ayez", "2P"}, {"aient", "3P"}});
    t.emplace("avoir", VerbForm{"avoir", "AUX", inf});
    t.emplace("eu", VerbForm{"avoir", "VERB", part});
    // Frequent irregular verbs, present indicative.
    add("aller", "VERB", kPres, {{"vais", "1S"}, {"vas", "2S"}, {"va", "3S"}, {"allons", "1P"}, {"allez", "2P"}, {"vont", "3P"}});
    add("aller", "VERB", kFut, {{"irai", "1S"}, {"iras", "2S"}, {"ira", "3S"}, {"irons", "1P"}, {"irez", "2P"}, {"iront", "3P"}});
    add("faire", "VERB", kPres, {{"fais", "1S"}, {"fait", "3S"}, {"faisons", "1P"}, {"faites", "2P"}, {"font", "3P"}});
    add("faire", "VERB", kFut, {{"ferai", "1S"}, {"fera", "3S"}, {"ferons", "1P"}, {"ferez", "2P"}, {"feront", "3P"}});
    add("faire", "VERB", kPast, {{"fit", "3S"}, {"firent", "3P"}});
    add("dire", "VERB", kPres, {{"dis", "1S"}, {"dit", "3S"}, {"disons", "1P"}, {"dites", "2P"}, {"disent", "3P"}});
    add("pouvoir", "VERB", kPres, {{"peux", "1S"}, {"peut", "3S"}, {"pouvons", "1P"}, {"pouvez", "2P"}, {"peuvent", "3P"}});
    add("pouvoir", "VERB", kFut, {{"pourrai", "1S"}, {"pourra", "3S"}, {"pourrons", "1P"}, {"pourront", "3P"}});
    add("pouvoir", "VERB", kCnd, {{"pourrais", "1S"}, {"pourrait", "3S"}, {"pourraient", "3P"}});
    add("vouloir", "VERB", kPres, {{"veux", "1S"}, {"veut", "3S"}, {"voulons", "1P"}, {"voulez", "2P"}, {"veulent", "3P"}});
    add("vouloir", "VERB", kCnd, {{"voudrais", "1S"}, {"voudrait", "3S"}, {"voudraient", "3P"}});
    add("devoir", "VERB", kPres, {{"dois", "1S"}, {"doit", "3S"}, {"devons", "1P"}, {"devez", "2P"}, {"doivent", "3P"}});
    add("savoir", "VERB", kPres, {{"sais", "1S"}, {"sait", "3S"}, {"savons", "1P"}, {"savez", "2P"}, {"savent", "3P"}});
    add("venir", "VERB", kPres, {{"viens", "1S"}, {"vient", "3S"}, {"venons", "1P"}, {"venez", "2P"}, {"viennent", "3P"}});
    add("venir", "VERB", kFut, {{"viendrai", "1S"}, {"viendra", "3S"}, {"viendront", "3P"}});
    add("venir", "VERB", kPast, {{"vint", "3S"}, {"vinrent", "3P"}});
    add("voir", "VERB", kPres, {{"vois", "1S"}, {"voit", "3S"}, {"voyons", "1P"}, {"voyez", "2P"}, {"voient", "3P"}});
    add("voir", "VERB", kFut, {{"verrai", "1S"}, {"verra", "3S"}, {"verront", "3P"}});
    add("prendre", "VERB", kPres, {{"prends", "1S"}, {"prend", "3S"}, {"prenons", "1P"}, {"prenez", "2P"}, {"prennent", "3P"}});
    add("prendre", "VERB", kPast, {{"prit", "3S"}, {"prirent", "3P"}});
    add("mettre", "VERB", kPres, {{"mets", "1S"}, {"met", "3S"}, {"mettons", "1P"}, {"mettez", "2P"}, {"mettent", "3P"}});
    add("dormir", "VERB", kPres, {{"dors", "1S"}, {"dort", "3S"}, {"dorment", "3P"}});
    add("partir", "VERB", kPres, {{"pars", "1S"}, {"part", "3S"}, {"partent", "3P"}});
    add("sembler", "VERB", kPres, {{"semble", "3S"}, {"semblent", "3P"}});
    add("devenir", "VERB", kPres, {{"deviens", "1S"}, {"devient", "3S"}, {"deviennent", "3P"}});
    add("paraître", "VERB", kPres, {{"parais", "1S"}, {"paraît", "3S"}, {"paraissent", "3P"}});
    return t;
  }();
  return table;
}

const std::unordered_map<std::string, std::string>& irregular_participles() {
  static const std::unordered_map<std::string, std::string> table = {
      {"fait", "faire"},     {"dit", "dire"},       {"pris", "prendre"}, {"mis", "mettre"},
      {"vu", "voir"},        {"venu", "venir"},     {"venue", "venir"},  {"allé", "aller"},
      {"allée", "aller"},    {"pu", "pouvoir"},     {"voulu", "vouloir"}, {"dû", "devoir"},
      {"su", "savoir"},      {"parti", "partir"},   {"partie", "partir"}, {"né", "naître"},
      {"née", "naître"},     {"mort", "mourir"},    {"lu", "lire"},       {"écrit", "écrire"},
      {"ouvert", "ouvrir"},  {"fini", "finir"},     {"dormi", "dormir"}, {"devenu", "devenir"},
      {"eu", "avoir"},       {"été", "être"},       {"connu", "connaître"}, {"cru", "croire"},
      {"bu", "boire"},       {"reçu", "recevoir"},  {"tenu", "tenir"},    {"vécu", "vivre"},
      {"perdu", "perdre"},   {"attendu", "attendre"}, {"entendu", "entendre"}, {"répondu", "répondre"},
      {"rendu", "rendre"},   {"appris", "apprendre"}, {"compris", "comprendre"}, {"choisi", "choisir"}};
  return table;
}

const Lexicon& closed_class() {
  static const Lexicon lex = [] {
    Lexicon l;
    auto add = [&](const char* upos, std::initializer_list<std::pair<const char*, const char*>> items) {
      for (const auto& [form, lemma] : items) l.emplace(form, LexEntry{upos, lemma, ""});
    };
    add("DET", {{"le", "le"}, {"la", "le"}, {"les", "le"}, {"l'", "le"}, {"l’", "le"}, {"un", "un"},
                {"une", "un"}, {"des", "un"}, {"du", "de"}, {"au", "à"}, {"aux", "à"}, {"ce", "ce"},
                {"cet", "ce"}, {"cette", "ce"}, {"ces", "ce"}, {"mon", "mon"}, {"ma", "mon"},
                {"mes", "mon"}, {"ton", "ton"}, {"ta", "ton"}, {"tes", "ton"}, {"son", "son"},
                {"sa", "son"}, {"ses", "son"}, {"notre", "notre"}, {"nos", "notre"},
                {"votre", "votre"}, {"vos", "votre"}, {"leur", "leur"}, {"leurs", "leur"},
                {"quelques", "quelque"}, {"quelque", "quelque"}, {"chaque", "chaque"},
                {"plusieurs", "plusieurs"}, {"aucun", "aucun"}, {"aucune", "aucun"},
                {"tout", "tout"}, {"toute", "tout"}, {"tous", "tout"}, {"toutes", "tout"},
                {"quel", "quel"}, {"quelle", "quel"}, {"quels", "quel"}, {"quelles", "quel"},
                {"certains", "certain"}, {"certaines", "certain"}});
    add("PRON", {{"je", "je"}, {"j'", "je"}, {"j’", "je"}, {"tu", "tu"}, {"il", "il"},
                 {"elle", "elle"}, {"on", "on"}, {"nous", "nous"}, {"vous", "vous"},
                 {"ils", "il"}, {"elles", "elle"}, {"me", "me"}, {"m'", "me"}, {"m’", "me"},
                 {"te", "te"}, {"t'", "te"}, {"t’", "te"}, {"se", "se"}, {"s'", "se"},
                 {"s’", "se"}, {"lui", "lui"}, {"y", "y"}, {"moi", "moi"}, {"toi", "toi"},
                 {"soi", "soi"}, {"eux", "eux"}, {"cela", "cela"}, {"ça", "cela"},
                 {"ceci", "ceci"}, {"c'", "ce"}, {"c’", "ce"}, {"ç'", "ce"}, {"qui", "qui"},
                 {"quoi", "quoi"}, {"dont", "dont"}, {"lequel", "lequel"},
                 {"laquelle", "lequel"}, {"lesquels", "lequel"}, {"celui", "celui"},
                 {"celle", "celui"}, {"ceux", "celui"}, {"celles", "celui"}, {"rien", "rien"},
                 {"personne", "personne"}, {"chacun", "chacun"}, {"chacune", "chacun"}});
    add("ADP", {{"à", "à"}, {"de", "de"}, {"d'", "de"}, {"d’", "de"}, {"dans", "dans"},
                {"sur", "sur"}, {"sous", "sous"}, {"avec", "avec"}, {"pour", "pour"},
                {"par", "par"}, {"sans", "sans"}, {"vers", "vers"}, {"chez", "chez"},
                {"entre", "entre"}, {"pendant", "pendant"}, {"depuis", "depuis"},
                {"avant", "avant"}, {"après", "après"}, {"contre", "contre"},
                {"parmi", "parmi"}, {"selon", "selon"}, {"malgré", "malgré"},
                {"durant", "durant"}, {"jusqu'", "jusque"}, {"jusqu’", "jusque"},
                {"jusque", "jusque"}, {"envers", "envers"}, {"devant", "devant"},
                {"derrière", "derrière"}, {"en", "en"}, {"afin", "afin"}, {"près", "près"},
                {"loin", "loin"}, {"hors", "hors"}});
    add("CCONJ", {{"et", "et"}, {"ou", "ou"}, {"mais", "mais"}, {"donc", "donc"}, {"or", "or"},
                  {"ni", "ni"}, {"car", "car"}});
    add("SCONJ", {{"que", "que"}, {"qu'", "que"}, {"qu’", "que"}, {"quand", "quand"},
                  {"si", "si"}, {"comme", "comme"}, {"lorsque", "lorsque"},
                  {"lorsqu'", "lorsque"}, {"lorsqu’", "lorsque"}, {"puisque", "puisque"},
                  {"puisqu'", "puisque"}, {"puisqu’", "puisque"}, {"quoique", "quoique"},
                  {"parce", "parce"}, {"tandis", "tandis"}});
    add("ADV", {{"ne", "ne"}, {"n'", "ne"}, {"n’", "ne"}, {"pas", "pas"}, {"plus", "plus"},
                {"très", "très"}, {"bien", "bien"}, {"trop", "trop"}, {"aussi", "aussi"},
                {"déjà", "déjà"}, {"toujours", "toujours"}, {"jamais", "jamais"},
                {"souvent", "souvent"}, {"hier", "hier"}, {"aujourd'hui", "aujourd'hui"},
                {"aujourd’hui", "aujourd'hui"}, {"demain", "demain"},
                {"maintenant", "maintenant"}, {"ensuite", "ensuite"}, {"puis", "puis"},
                {"alors", "alors"}, {"encore", "encore"}, {"ici", "ici"}, {"là", "là"},
                {"tard", "tard"}, {"tôt", "tôt"}, {"bientôt", "bientôt"}, {"vite", "vite"},
                {"beaucoup", "beaucoup"}, {"peu", "peu"}, {"assez", "assez"},
                {"moins", "moins"}, {"autant", "autant"}, {"tellement", "tellement"},
                {"vraiment", "vraiment"}, {"enfin", "enfin"}, {"parfois", "parfois"},
                {"longtemps", "longtemps"}, {"soudain", "soudain"},
                {"désormais", "désormais"}, {"autrefois", "autrefois"},
                {"seulement", "seulement"}, {"non", "non"}, {"oui", "oui"},
                {"surtout", "surtout"}, {"partout", "partout"}, {"ailleurs", "ailleurs"},
                {"ainsi", "ainsi"}, {"cependant", "cependant"}, {"pourtant", "pourtant"},
                {"toutefois", "toutefois"}, {"néanmoins", "néanmoins"},
                {"également", "également"}, {"environ", "environ"}, {"presque", "presque"},
                {"quelquefois", "quelquefois"}, {"aussitôt", "aussitôt"},
                {"tantôt", "tantôt"}, {"dorénavant", "dorénavant"}, {"jadis", "jadis"},
                {"naguère", "naguère"}, {"tout à coup", "tout à coup"}, {"où", "où"},
                {"comment", "comment"}, {"pourquoi", "pourquoi"}, {"combien", "combien"}});
    add("NUM", {{"deux", "deux"}, {"trois", "trois"}, {"quatre", "quatre"}, {"cinq", "cinq"},
                {"six", "six"}, {"sept", "sept"}, {"huit", "huit"}, {"neuf", "neuf"},
                {"dix", "dix"}, {"vingt", "vingt"}, {"cent", "cent"}, {"mille", "mille"}});
    add("INTJ", {{"oh", "oh"}, {"ah", "ah"}, {"miam", "miam"}, {"bravo", "bravo"},
                 {"hélas", "hélas"}, {"bonjour", "bonjour"}, {"merci", "merci"},
                 {"eh", "eh"}, {"ouf", "ouf"}, {"voilà", "voilà"}, {"voici", "voici"}});
    return l;
  }();
  return lex;
}

const std::unordered_set<std::string>& adjective_lexicon() {
  static const std::unordered_set<std::string> set = {
      "petit", "petite", "petits", "petites", "grand", "grande", "grands", "grandes", "beau",
      "belle", "beaux", "belles", "bon", "bonne", "bons", "bonnes", "jeune", "jeunes",
      "vieux", "vieille", "vieilles", "nouveau", "nouvelle", "nouveaux", "nouvelles", "joli",
      "jolie", "jolis", "jolies", "gros", "grosse", "grosses", "long", "longue", "longs",
      "longues", "court", "courte", "haut", "haute", "bas", "basse", "noir", "noire", "noirs",
      "noires", "blanc", "blanche", "blancs", "blanches", "rouge", "rouges", "bleu", "bleue",
      "bleus", "vert", "verte", "verts", "jaune", "jaunes", "gris", "grise", "content",
      "contente", "contents", "heureux", "heureuse", "triste", "tristes", "gentil", "gentille",
      "méchant", "méchante", "premier", "première", "dernier", "dernière", "autre", "autres",
      "même", "mêmes", "seul", "seule", "seuls", "seules", "chaud", "chaude", "froid",
      "froide", "facile", "faciles", "difficile", "difficiles", "important", "importante",
      "importants", "grave", "possible", "impossible", "simple", "rapide", "lent", "lente",
      "doux", "douce", "fort", "forte", "faible", "riche", "pauvre", "propre", "sale", "plein",
      "pleine", "vide", "libre", "prêt", "prête", "certain", "certaine", "drôle", "calme",
      "immense", "énorme", "minuscule", "magnifique", "terrible", "sombre", "clair", "claire",
      "entier", "entière", "public", "publique", "social", "sociale", "politique",
      "économique", "national", "nationale", "international", "internationale"};
  return set;
}

const std::unordered_set<std::string>& subject_pronouns() {
  static const std::unordered_set<std::string> set = {
      "je", "j'", "j’", "tu", "il", "elle", "on", "nous", "vous", "ils", "elles", "ce", "c'", "c’",
      "ça", "cela", "qui"};
  return set;
}

const std::unordered_set<std::string>& object_clitics() {
  static const std::unordered_set<std::string> set = {
      "me", "m'", "m’", "te", "t'", "t’", "se", "s'", "s’", "le", "la", "les", "l'", "l’", "lui",
      "leur", "y", "en", "nous", "vous"};
  return set;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Number of code points in the stem left after removing `suffix`.
std::size_t stem_length(std::string_view s, std::string_view suffix) {
  return utf8::length(s.substr(0, s.size() - suffix.size()));
}

bool has_suffix(std::string_view s, std::initializer_list<std::string_view> suffixes,
                std::size_t min_stem = 2) {
  for (auto suf : suffixes) {
    if (ends_with(s, suf) && stem_length(s, suf) >= min_stem) return true;
  }
  return false;
}

bool infinitive_like(std::string_view w) { return has_suffix(w, {"er", "ir", "re", "oir"}); }

bool participle_like(std::string_view w) {
  return irregular_participles().count(std::string(w)) ||
         has_suffix(w, {"é", "ée", "és", "ées", "i", "ie", "is", "ies", "u", "ue", "us", "ues"});
}

bool strong_verb_suffix(std::string_view w) {
  return has_suffix(w, {"aient", "eraient", "erait", "erons", "eront", "èrent", "issait",
                        "issaient", "issent", "issons"});
}

bool finite_verb_suffix(std::string_view w) {
  return has_suffix(w, {"aient", "ait", "ais", "ions", "iez", "ons", "ez", "ent", "era", "erai",
                        "eront", "èrent", "e", "es", "t", "d"});
}

bool adjective_suffix(std::string_view w) {
  return has_suffix(w, {"eux", "euse", "euses", "ique", "iques", "able", "ables", "ible",
                        "ibles", "ive", "ives", "if", "ifs"}, 3);
}

struct SuffixFeat {
  std::string_view suffix;
  const char* feats;
  const char* person;
};

// Ordered longest/most specific first.
const std::vector<SuffixFeat>& finite_suffixes() {
  static const std::vector<SuffixFeat> table = {
      {"eraient", kCnd, "3P"}, {"raient", kCnd, "3P"}, {"erions", kCnd, "1P"},
      {"eriez", kCnd, "2P"},   {"erais", kCnd, "1S"},  {"erait", kCnd, "3S"},
      {"rait", kCnd, "3S"},    {"rais", kCnd, "1S"},   {"aient", kImp, "3P"},
      {"èrent", kPast, "3P"},  {"irent", kPast, "3P"}, {"urent", kPast, "3P"},
      {"âmes", kPast, "1P"},   {"îmes", kPast, "1P"},  {"âtes", kPast, "2P"},
      {"erons", kFut, "1P"},   {"eront", kFut, "3P"},  {"erez", kFut, "2P"},
      {"erai", kFut, "1S"},    {"eras", kFut, "2S"},   {"era", kFut, "3S"},
      {"ions", kImp, "1P"},    {"iez", kImp, "2P"},    {"ais", kImp, "1S"},
      {"ait", kImp, "3S"},     {"ons", kPres, "1P"},   {"ez", kPres, "2P"},
      {"ent", kPres, "3P"},    {"es", kPres, "2S"},    {"e", kPres, "3S"},
      {"s", kPres, "1S"},      {"t", kPres, "3S"},     {"d", kPres, "3S"},
      {"x", kPres, "1S"}};
  return table;
}

std::string verb_lemma(std::string_view w) {
  static const std::vector<std::string_view> suffixes = {
      "eraient", "erions", "eriez", "erais", "erait", "erons", "eront", "aient", "èrent",
      "erai", "eras", "erez", "era", "ions", "iez", "ais", "ait", "âmes", "âtes", "ons", "ez",
      "ent", "ées", "és", "ée", "é", "es", "e"};
  for (auto suf : suffixes) {
    if (ends_with(w, suf) && stem_length(w, suf) >= 2) {
      std::string stem(w.substr(0, w.size() - suf.size()));
      if (ends_with(stem, "iss")) return stem.substr(0, stem.size() - 3) + "ir";
      if (ends_with(stem, "ge") && suf != "e" && suf != "es") stem.pop_back();
      return stem + "er";
    }
  }
  if (has_suffix(w, {"is", "it", "ie", "i"})) {
    const auto cut = ends_with(w, "i") ? 1 : 2;
    return std::string(w.substr(0, w.size() - cut)) + (ends_with(w, "i") ? "ir" : "ir");
  }
  return std::string(w);
}

std::string nominal_lemma(std::string_view w) {
  if (utf8::length(w) > 3 && (ends_with(w, "s") || ends_with(w, "x"))) {
    return std::string(w.substr(0, w.size() - 1));
  }
  return std::string(w);
}

std::string feats_subject_code(const std::vector<std::string>& lower, std::size_t i) {
  // Walk back over clitics and negation to the subject pronoun, if any.
  for (std::size_t k = i; k-- > 0 && i - k <= 4;) {
    const std::string& w = lower[k];
    if (w == "je" || w == "j'" || w == "j’") return "1S";
    if (w == "tu") return "2S";
    if (w == "il" || w == "elle" || w == "on" || w == "ce" || w == "c'" || w == "c’" ||
        w == "ça" || w == "cela")
      return "3S";
    if (w == "ils" || w == "elles") return "3P";
    if (w == "nous" && k + 1 == i) return "1P";
    if (w == "vous" && k + 1 == i) return "2P";
    if (object_clitics().count(w) || w == "ne" || w == "n'" || w == "n’") continue;
    break;
  }
  return "";
}

bool preceded_by_que(const std::vector<std::string>& lower, std::size_t i) {
  for (std::size_t k = i; k-- > 0 && i - k <= 4;) {
    const auto& w = lower[k];
    if (w == "que" || w == "qu'" || w == "qu’") return true;
  }
  return false;
}

std::map<std::string, std::string> finite_feats(const std::vector<std::string>& lower,
                                                std::size_t i) {
  const std::string& w = lower[i];
  std::map<std::string, std::string> feats = parse_feats(kPres);
  std::string code = "3S";
  std::string_view matched;
  for (const auto& sf : finite_suffixes()) {
    if (ends_with(w, sf.suffix) && stem_length(w, sf.suffix) >= 2) {
      feats = parse_feats(sf.feats);
      code = sf.person;
      matched = sf.suffix;
      break;
    }
  }
  const std::string subject = feats_subject_code(lower, i);
  if (!subject.empty()) code = subject;
  if (preceded_by_que(lower, i) &&
      (matched == "e" || matched == "es" || matched == "ent" || matched == "ions" ||
       matched == "iez")) {
    feats = parse_feats(kSub);
  }
  add_person(feats, code);
  return feats;
}

std::map<std::string, std::string> participle_feats(std::string_view w) {
  auto feats = parse_feats("Tense=Past|VerbForm=Part");
  const bool fem = ends_with(w, "e") || ends_with(w, "es");
  const bool plur = ends_with(w, "s");
  feats["Gender"] = fem ? "Fem" : "Masc";
  feats["Number"] = plur ? "Plur" : "Sing";
  return feats;
}

bool is_aux_chain_adverb(std::string_view w) {
  return w == "pas" || w == "plus" || w == "jamais" || w == "déjà" || w == "bien" ||
         w == "toujours" || w == "encore" || w == "souvent" || w == "beaucoup" || w == "tout" ||
         w == "vraiment" || w == "aussi" || w == "rien" || w == "trop" || w == "peu";
}

}  // namespace

HeuristicAnnotator::HeuristicAnnotator() : HeuristicAnnotator(std::make_shared<RulePhonemizer>()) {}

HeuristicAnnotator::HeuristicAnnotator(std::shared_ptr<const Phonemizer> phonemizer)
    : phonemizer_(std::move(phonemizer)) {
  if (!phonemizer_) throw InvalidArgument("HeuristicAnnotator needs a phonemizer");
}

Capabilities HeuristicAnnotator::capabilities() const {
  return {Capability::Pos, Capability::Lemma, Capability::Feats, Capability::Phoneme};
}

SentenceAnnotation HeuristicAnnotator::annotate(const std::vector<std::string>& forms) const {
  SentenceAnnotation out;
  out.capabilities = capabilities();
  out.provenance = Provenance::Heuristic;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (!out.text.empty()) out.text += ' ';
    out.text += forms[i];
  }
  const std::size_t n = forms.size();
  std::vector<std::string> lower(n);
  for (std::size_t i = 0; i < n; ++i) lower[i] = utf8::to_lower(forms[i]);

  const auto& closed = closed_class();
  const auto& verbs = irregular_verbs();
  out.tokens.resize(n);

  // Index of the nearest preceding token that is not an adverb of the
  // auxiliary chain ("a pas mangé", "a déjà fini").
  auto prev_non_adverb = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t k = i; k-- > 0;) {
      if (!is_aux_chain_adverb(lower[k]) && lower[k] != "ne" && lower[k] != "n'" &&
          lower[k] != "n’")
        return k;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n; ++i) {
    Token& tok = out.tokens[i];
    tok.form = forms[i];
    const std::string& w = lower[i];
    const std::string prev_upos = i > 0 ? out.tokens[i - 1].upos : "";
    const std::string prev_w = i > 0 ? lower[i - 1] : "";
    const std::string next_w = i + 1 < n ? lower[i + 1] : "";

    if (is_punctuation(w)) {
      tok.upos = "PUNCT";
      tok.lemma = tok.form;
      continue;
    }
    if (!is_word(w)) {
      tok.upos = "NUM";
      tok.lemma = tok.form;
      continue;
    }

    const auto prev_core = prev_non_adverb(i);
    const bool after_aux = prev_core && out.tokens[*prev_core].upos == "AUX";
    const bool after_subject =
        i > 0 && (subject_pronouns().count(prev_w) ||
                  (prev_upos == "PRON" && object_clitics().count(prev_w)) || prev_w == "ne" ||
                  prev_w == "n'" || prev_w == "n’");

    if (after_aux && irregular_participles().count(w)) {
      tok.upos = "VERB";
      tok.lemma = irregular_participles().at(w);
      tok.feats = participle_feats(w);
      continue;
    }
    if (auto it = verbs.find(w); it != verbs.end() && w != "été" && w != "eu") {
      tok.upos = it->second.upos;
      tok.lemma = it->second.lemma;
      tok.feats = it->second.feats;
      if (auto subj = feats_subject_code(lower, i); !subj.empty() && tok.feats.count("Person")) {
        add_person(tok.feats, subj);
      }
      continue;
    }
    if (auto it = closed.find(w); it != closed.end()) {
      tok.upos = it->second.upos;
      tok.lemma = it->second.lemma;
      const bool clitic_context =
          i > 0 && (subject_pronouns().count(prev_w) || prev_w == "ne" || prev_w == "n'" ||
                    prev_w == "n’" || (prev_upos == "PRON" && object_clitics().count(prev_w)));
      if ((w == "le" || w == "la" || w == "les" || w == "l'" || w == "l’" || w == "leur") &&
          clitic_context) {
        tok.upos = "PRON";
        tok.lemma = w == "leur" ? "leur" : "le";
      } else if (w == "en" && clitic_context) {
        tok.upos = "PRON";
      } else if (w == "ce" && (next_w == "qui" || next_w == "que" || next_w == "qu'" ||
                               next_w == "qu’" || next_w == "est" || next_w == "sont" ||
                               next_w == "était" || next_w == "dont")) {
        tok.upos = "PRON";
      } else if ((w == "nous" || w == "vous") && after_subject) {
        tok.upos = "PRON";
      }
      continue;
    }
    if (adjective_lexicon().count(w)) {
      tok.upos = "ADJ";
      tok.lemma = nominal_lemma(w);
      continue;
    }

    // Open class decision from context and suffixes.
    const bool after_det = prev_upos == "DET" ||
                           (prev_upos == "ADJ" && i >= 2 && out.tokens[i - 2].upos == "DET");
    const bool after_inf_prep = prev_w == "à" || prev_w == "de" || prev_w == "d'" ||
                                prev_w == "d’" || prev_w == "pour" || prev_w == "sans" ||
                                prev_w == "par" || prev_w == "afin";
    const bool capitalized = utf8::is_upper(utf8::decode(forms[i]).front());

    if (capitalized && i > 0 && prev_w != "«" && prev_w != "\"") {
      tok.upos = "PROPN";
      tok.lemma = tok.form;
    } else if (after_aux && participle_like(w)) {
      tok.upos = "VERB";
      tok.lemma = verb_lemma(w);
      tok.feats = participle_feats(w);
    } else if (after_det) {
      tok.upos = adjective_suffix(w) && next_w.size() > 0 && !is_punctuation(next_w) &&
                         closed.count(next_w) == 0
                     ? "ADJ"
                     : "NOUN";
      tok.lemma = nominal_lemma(w);
    } else if ((after_inf_prep || prev_upos == "VERB" || prev_upos == "AUX") && infinitive_like(w)) {
      tok.upos = "VERB";
      tok.lemma = w;
      tok.feats = parse_feats("VerbForm=Inf");
    } else if (after_subject || strong_verb_suffix(w) ||
               ((prev_upos == "NOUN" || prev_upos == "PROPN") && finite_verb_suffix(w))) {
      if (infinitive_like(w) && !after_subject) {
        tok.upos = "VERB";
        tok.lemma = w;
        tok.feats = parse_feats("VerbForm=Inf");
      } else {
        tok.upos = "VERB";
        tok.lemma = verb_lemma(w);
        tok.feats = finite_feats(lower, i);
      }
    } else if (adjective_suffix(w)) {
      tok.upos = "ADJ";
      tok.lemma = nominal_lemma(w);
    } else if (prev_upos == "NOUN" && has_suffix(w, {"é", "ée", "és", "ées"})) {
      tok.upos = "VERB";
      tok.lemma = verb_lemma(w);
      tok.feats = participle_feats(w);
    } else {
      tok.upos = "NOUN";
      tok.lemma = nominal_lemma(w);
    }
  }

  for (auto& tok : out.tokens) {
    if (tok.lemma.empty()) tok.lemma = tok.form;
    if (is_word(tok.form)) tok.phonemes = phonemizer_->phonemize(tok.form);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tense analysis

std::string_view tense_name(Tense t) {
  switch (t) {
    case Tense::Present: return "Present";
    case Tense::PasseSimple: return "PasseSimple";
    case Tense::Future: return "Future";
    case Tense::Imperfect: return "Imperfect";
    case Tense::SubjunctivePresent: return "SubjunctivePresent";
    case Tense::ConditionalPresent: return "ConditionalPresent";
    case Tense::Infinitive: return "Infinitive";
    case Tense::PasseCompose: return "PasseCompose";
    case Tense::PasseAnterieur: return "PasseAnterieur";
    case Tense::FutureAnterieur: return "FutureAnterieur";
    case Tense::PlusQueParfait: return "PlusQueParfait";
    case Tense::SubjunctivePast: return "SubjunctivePast";
    case Tense::ConditionalPast: return "ConditionalPast";
    case Tense::InfinitivePast: return "InfinitivePast";
  }
  return "?";
}

bool is_compound(Tense t) { return static_cast<int>(t) >= static_cast<int>(Tense::PasseCompose); }

namespace {

std::string feat(const Token& t, const std::string& key) {
  const auto it = t.feats.find(key);
  return it == t.feats.end() ? "" : it->second;
}

std::optional<Tense> simple_tense(const Token& t) {
  const auto form = feat(t, "VerbForm");
  const auto mood = feat(t, "Mood");
  const auto tense = feat(t, "Tense");
  if (form == "Inf") return Tense::Infinitive;
  if (form == "Part" || form == "Ger") return std::nullopt;
  if (mood == "Sub") return Tense::SubjunctivePresent;
  if (mood == "Cnd") return Tense::ConditionalPresent;
  if (mood == "Imp") return Tense::Present;
  if (tense == "Pres") return Tense::Present;
  if (tense == "Past") return Tense::PasseSimple;
  if (tense == "Fut") return Tense::Future;
  if (tense == "Imp") return Tense::Imperfect;
  return std::nullopt;
}

std::optional<Tense> compound_of(Tense aux) {
  switch (aux) {
    case Tense::Present: return Tense::PasseCompose;
    case Tense::PasseSimple: return Tense::PasseAnterieur;
    case Tense::Future: return Tense::FutureAnterieur;
    case Tense::Imperfect: return Tense::PlusQueParfait;
    case Tense::SubjunctivePresent: return Tense::SubjunctivePast;
    case Tense::ConditionalPresent: return Tense::ConditionalPast;
    case Tense::Infinitive: return Tense::InfinitivePast;
    default: return std::nullopt;
  }
}

bool is_auxiliary(const Token& t) {
  if (t.upos == "AUX") return true;
  if (t.upos != "VERB") return false;
  const auto lemma = utf8::to_lower(t.lemma);
  return lemma == "avoir" || lemma == "être";
}

bool is_past_participle(const Token& t) {
  if (t.upos != "VERB" && t.upos != "AUX") return false;
  if (feat(t, "VerbForm") != "Part") return false;
  const auto tense = feat(t, "Tense");
  return tense.empty() || tense == "Past";
}

void fill_person(VerbGroup& g, const Token& finite) {
  const auto person = feat(finite, "Person");
  if (person == "1" || person == "2" || person == "3") g.person = person[0] - '0';
  const auto number = feat(finite, "Number");
  if (number == "Sing") g.number = 1;
  if (number == "Plur") g.number = 2;
}

}  // namespace

std::vector<VerbGroup> detect_verb_groups(const SentenceAnnotation& a) {
  std::vector<VerbGroup> groups;
  if (!a.capabilities.has(Capability::Pos) || !a.capabilities.has(Capability::Feats)) return groups;
  const auto& toks = a.tokens;
  std::vector<bool> consumed(toks.size(), false);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (consumed[i]) continue;
    const Token& t = toks[i];
    if (t.upos != "VERB" && t.upos != "AUX") continue;
    const auto tense = simple_tense(t);
    if (!tense) continue;
    if (is_auxiliary(t)) {
      std::optional<std::size_t> participle;
      for (std::size_t j = i + 1; j < toks.size() && j <= i + 4; ++j) {
        const Token& u = toks[j];
        if (is_past_participle(u)) {
          participle = j;
          break;
        }
        if (u.upos != "ADV" && u.upos != "PRON" && u.upos != "PART") break;
      }
      if (participle) {
        if (auto compound = compound_of(*tense)) {
          VerbGroup g{*compound, *participle, i};
          fill_person(g, t);
          consumed[*participle] = true;
          groups.push_back(g);
          continue;
        }
      }
    }
    VerbGroup g{*tense, i, std::nullopt};
    fill_person(g, t);
    groups.push_back(g);
  }
  return groups;
}

}  // namespace agerec
