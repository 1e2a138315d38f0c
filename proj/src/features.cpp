#include "agerec/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "agerec/error.hpp"
#include "agerec/text.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

namespace {

struct MeanStd {
  double mean = 0, std = 0;
};

// Population standard deviation.
MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return r;
}

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

const std::unordered_set<std::string>& state_verbs() {
  static const std::unordered_set<std::string> set = {
      "être", "sembler", "paraître", "devenir", "demeurer", "rester", "redevenir", "avoir l'air"};
  return set;
}

const std::unordered_set<std::string>& clitics() {
  static const std::unordered_set<std::string> set = {
      "je", "j'", "j’", "tu", "il", "elle", "on", "nous", "vous", "ils", "elles", "me", "m'",
      "m’", "te", "t'", "t’", "se", "s'", "s’", "le", "la", "les", "l'", "l’", "lui", "leur",
      "y", "en"};
  return set;
}

const std::unordered_set<std::string>& temporal_adverbs() {
  static const std::unordered_set<std::string> set = {
      "hier", "aujourd'hui", "aujourd’hui", "demain", "maintenant", "ensuite", "puis", "alors",
      "déjà", "toujours", "jamais", "souvent", "parfois", "longtemps", "bientôt", "tôt", "tard",
      "soudain", "désormais", "autrefois", "encore", "enfin", "aussitôt", "quelquefois",
      "tantôt", "dorénavant", "jadis", "naguère", "auparavant", "depuis", "immédiatement",
      "récemment", "actuellement", "toutefois"};
  return set;
}

enum class System { None, Past, Present, Future };

System system_of(Tense t) {
  switch (t) {
    case Tense::Present:
    case Tense::SubjunctivePresent:
    case Tense::ConditionalPresent: return System::Present;
    case Tense::PasseSimple:
    case Tense::Imperfect:
    case Tense::PasseCompose:
    case Tense::PasseAnterieur:
    case Tense::PlusQueParfait:
    case Tense::SubjunctivePast:
    case Tense::ConditionalPast: return System::Past;
    case Tense::Future:
    case Tense::FutureAnterieur: return System::Future;
    default: return System::None;
  }
}

bool is_subjunctive(Tense t) { return t == Tense::SubjunctivePresent || t == Tense::SubjunctivePast; }
bool is_infinitive(Tense t) { return t == Tense::Infinitive || t == Tense::InfinitivePast; }
bool is_indicative(Tense t) {
  switch (t) {
    case Tense::Present:
    case Tense::PasseSimple:
    case Tense::Future:
    case Tense::Imperfect:
    case Tense::PasseCompose:
    case Tense::PasseAnterieur:
    case Tense::FutureAnterieur:
    case Tense::PlusQueParfait: return true;
    default: return false;
  }
}

class Writer {
 public:
  explicit Writer(FeatureVector& v) : v_(v) {}
  void set(std::string_view name, double value) {
    const int i = feature_index(name);
    v_.values[i] = value;
    v_.valid[i] = true;
  }

 private:
  FeatureVector& v_;
};

}  // namespace

FeatureVector extract_sentence_features(const SentenceAnnotation& a, const ResourceBundle& res) {
  FeatureVector v;
  Writer w(v);
  const auto& caps = a.capabilities;
  const bool has_pos = caps.has(Capability::Pos);
  const bool has_lemma = caps.has(Capability::Lemma);
  const bool has_feats = has_pos && caps.has(Capability::Feats);
  const bool has_dep = caps.has(Capability::Dependency) && is_valid_tree(a.tokens);
  const bool has_phon = caps.has(Capability::Phoneme);

  std::vector<std::size_t> words;
  std::size_t punct = 0, chars = 0;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const auto& form = a.tokens[i].form;
    chars += utf8::length(form);
    if (is_word(form)) {
      words.push_back(i);
    } else if (is_punctuation(form)) {
      ++punct;
    }
  }
  const double n_words = static_cast<double>(words.size());
  std::vector<std::string> lower(a.tokens.size());
  for (std::size_t i = 0; i < a.tokens.size(); ++i) lower[i] = utf8::to_lower(a.tokens[i].form);

  // Plain counts are defined even for a sentence without words.
  w.set("SentenceLength", n_words);

  std::vector<VerbGroup> groups;
  if (has_feats) {
    groups = detect_verb_groups(a);
    std::set<Tense> distinct;
    std::set<System> systems;
    for (const auto& g : groups) {
      distinct.insert(g.tense);
      if (g.finite() && system_of(g.tense) != System::None) systems.insert(system_of(g.tense));
    }
    w.set("TenseDiversity", static_cast<double>(distinct.size()));
    w.set("TemporalSystemCount", static_cast<double>(systems.size()));
  }

  std::vector<std::string> all_phonemes;
  if (has_phon) {
    for (auto i : words) {
      for (const auto& p : a.tokens[i].phonemes) all_phonemes.push_back(p);
    }
    w.set("PhonemeNumberSentence", static_cast<double>(all_phonemes.size()));
    w.set("PhonemeDiversitySentence",
          static_cast<double>(std::set<std::string>(all_phonemes.begin(), all_phonemes.end()).size()));
  }

  if (words.empty()) return v;

  // Lexicon
  {
    std::vector<double> lp, freq;
    for (auto i : words) {
      const double l = res.word_log_prob(lower[i]);
      lp.push_back(l);
      freq.push_back(std::exp(l) * 1e6);
    }
    const auto l = mean_std(lp), f = mean_std(freq);
    w.set("LexLogProbMean", l.mean);
    w.set("LexLogProbStd", l.std);
    w.set("WordFrequencyMean", f.mean);
    w.set("WordFrequencyStd", f.std);
    if (has_lemma) {
      std::set<std::string> lemmas;
      for (auto i : words) lemmas.insert(utf8::to_lower(a.tokens[i].lemma));
      w.set("LemmaDiversity", ratio(static_cast<double>(lemmas.size()), n_words));
    }
  }

  // Graphemes
  {
    std::vector<double> conf, len;
    for (auto i : words) {
      const auto cps = utf8::decode(lower[i]);
      double c = 0;
      for (std::size_t k = 0; k + 1 < cps.size(); ++k) c += res.grapheme_confusion(cps[k], cps[k + 1]);
      conf.push_back(c);
      len.push_back(static_cast<double>(cps.size()));
    }
    const auto c = mean_std(conf), l = mean_std(len);
    w.set("GraphConfusabilityMean", c.mean);
    w.set("GraphConfusabilityStd", c.std);
    w.set("WordLengthMean", l.mean);
    w.set("WordLengthStd", l.std);
    w.set("CharsPerWord", ratio(static_cast<double>(chars), n_words));
    w.set("PunctuationPerWord", ratio(static_cast<double>(punct), n_words));
  }

  // Morphosyntax
  {
    double stop = 0;
    for (auto i : words) stop += res.stop_words.count(lower[i]) ? 1 : 0;
    w.set("StopwordsProportion", stop / n_words);
    if (has_pos) {
      double verbs = 0, states = 0, nouns = 0, adjs = 0, clit = 0, tadv = 0;
      for (auto i : words) {
        const auto& t = a.tokens[i];
        const bool verb = t.upos == "VERB" || t.upos == "AUX";
        verbs += verb;
        nouns += t.upos == "NOUN" || t.upos == "PROPN";
        adjs += t.upos == "ADJ";
        clit += t.upos == "PRON" && clitics().count(lower[i]);
        tadv += t.upos == "ADV" && temporal_adverbs().count(lower[i]);
        if (has_lemma && verb) states += state_verbs().count(utf8::to_lower(t.lemma)) ? 1 : 0;
      }
      w.set("VerbProportion", verbs / n_words);
      w.set("NounProportion", nouns / n_words);
      w.set("AdjectiveProportion", adjs / n_words);
      w.set("CliticProportion", clit / n_words);
      w.set("TemporalAdverbProportion", tadv / n_words);
      if (has_lemma) w.set("StateVerbProportion", states / n_words);
    }
  }

  // Verbal tenses and person/number
  if (has_feats) {
    const double n_groups = static_cast<double>(groups.size());
    std::vector<double> per_tense(kTenseCount, 0.0);
    double compound = 0, infinitive = 0, indicative = 0, subjunctive = 0;
    double finite = 0, past = 0, present = 0, future = 0;
    double p1 = 0, p2 = 0, p3 = 0, sing = 0, plur = 0;
    for (const auto& g : groups) {
      per_tense[static_cast<std::size_t>(g.tense)] += 1;
      compound += is_compound(g.tense);
      infinitive += is_infinitive(g.tense);
      indicative += is_indicative(g.tense);
      subjunctive += is_subjunctive(g.tense);
      if (!g.finite()) continue;
      finite += 1;
      const auto sys = system_of(g.tense);
      past += sys == System::Past;
      present += sys == System::Present;
      future += sys == System::Future;
      p1 += g.person == 1;
      p2 += g.person == 2;
      p3 += g.person == 3;
      sing += g.number == 1;
      plur += g.number == 2;
    }
    for (int t = 0; t < kTenseCount; ++t) {
      w.set("Tense" + std::string(tense_name(static_cast<Tense>(t))),
            ratio(per_tense[static_cast<std::size_t>(t)], n_groups));
    }
    w.set("SystemPast", ratio(past, finite));
    w.set("SystemPresent", ratio(present, finite));
    w.set("SystemFuture", ratio(future, finite));
    w.set("CompoundTenseProportion", ratio(compound, n_groups));
    w.set("SimpleTenseProportion", ratio(n_groups - compound, n_groups));
    w.set("ModeInfinitive", ratio(infinitive, n_groups));
    w.set("ModeIndicative", ratio(indicative, n_groups));
    w.set("ModeSubjunctive", ratio(subjunctive, n_groups));
    w.set("Person1", ratio(p1, finite));
    w.set("Person2", ratio(p2, finite));
    w.set("Person3", ratio(p3, finite));
    w.set("NumberSingular", ratio(sing, finite));
    w.set("NumberPlural", ratio(plur, finite));
  }

  // Dependencies (distances in token positions)
  if (has_dep) {
    const std::size_t n = a.tokens.size();
    std::vector<std::vector<std::size_t>> dependents(n);
    std::vector<double> pointed, dep_count, dep_mean;
    double max_dist = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int h = a.tokens[i].head;
      if (h <= 0) continue;
      const double d = std::abs(static_cast<double>(i + 1) - h);
      dependents[static_cast<std::size_t>(h - 1)].push_back(i);
      pointed.push_back(d);
      max_dist = std::max(max_dist, d);
    }
    for (std::size_t i = 0; i < n; ++i) {
      dep_count.push_back(static_cast<double>(dependents[i].size()));
      if (dependents[i].empty()) continue;
      double s = 0;
      for (auto j : dependents[i]) s += std::abs(static_cast<double>(j) - static_cast<double>(i));
      dep_mean.push_back(s / static_cast<double>(dependents[i].size()));
    }
    int depth = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int d = 1;
      for (int cur = a.tokens[i].head; cur > 0; cur = a.tokens[static_cast<std::size_t>(cur - 1)].head) ++d;
      depth = std::max(depth, d);
    }
    const auto pc = mean_std(pointed), dc = mean_std(dep_count);
    w.set("DepDistanceMean", mean_std(dep_mean).mean);
    w.set("DepDistanceMax", max_dist);
    w.set("DependentsPerWordMean", dc.mean);
    w.set("DependentsPerWordStd", dc.std);
    w.set("PointedDistanceMean", pc.mean);
    w.set("PointedDistanceStd", pc.std);
    w.set("TreeDepth", static_cast<double>(depth));
  }

  // Connectors: longest match over lowercase token sequences.
  {
    std::vector<double> counts(connector_categories().size(), 0.0);
    for (std::size_t i = 0; i < lower.size();) {
      std::size_t matched = 0;
      for (std::size_t len = std::min(res.longest_connector, lower.size() - i); len >= 1; --len) {
        std::string key = lower[i];
        for (std::size_t k = 1; k < len; ++k) key += " " + lower[i + k];
        const auto it = res.connectors.find(key);
        if (it != res.connectors.end()) {
          counts[static_cast<std::size_t>(it->second)] += 1;
          matched = len;
          break;
        }
      }
      i += matched ? matched : 1;
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      w.set("Conn" + connector_categories()[c], counts[c] / n_words);
    }
  }

  // Phonetics
  if (has_phon) {
    double prob_sum = 0;
    for (const auto& p : all_phonemes) prob_sum += res.phoneme_probability(p);
    w.set("PhonemeFrequencySentence", ratio(prob_sum, static_cast<double>(all_phonemes.size())));
    std::vector<double> ordinariness, diversity, number;
    for (auto i : words) {
      const auto& ph = a.tokens[i].phonemes;
      number.push_back(static_cast<double>(ph.size()));
      double s = 0;
      for (const auto& p : ph) s += res.phoneme_probability(p);
      ordinariness.push_back(ratio(s, static_cast<double>(ph.size())));
      diversity.push_back(ratio(static_cast<double>(std::set<std::string>(ph.begin(), ph.end()).size()),
                                static_cast<double>(ph.size())));
    }
    const auto o = mean_std(ordinariness), d = mean_std(diversity), nb = mean_std(number);
    w.set("PhonemeOrdinarinessMean", o.mean);
    w.set("PhonemeOrdinarinessStd", o.std);
    w.set("PhonemeDiversityMean", d.mean);
    w.set("PhonemeDiversityStd", d.std);
    w.set("PhonemeNumberAvg", nb.mean);
    w.set("PhonemeNumberStd", nb.std);
  }

  // Sentiments
  {
    double pol = 0, subj = 0, hits = 0;
    std::vector<double> emo(emotion_names().size(), 0.0);
    for (auto i : words) {
      const std::string lemma = has_lemma ? utf8::to_lower(a.tokens[i].lemma) : "";
      auto s = res.sentiment.find(lower[i]);
      if (s == res.sentiment.end() && !lemma.empty()) s = res.sentiment.find(lemma);
      if (s != res.sentiment.end()) {
        pol += s->second.first;
        subj += s->second.second;
        hits += 1;
      }
      auto e = res.emotions.find(lower[i]);
      if (e == res.emotions.end() && !lemma.empty()) e = res.emotions.find(lemma);
      if (e != res.emotions.end()) emo[static_cast<std::size_t>(e->second)] += 1;
    }
    w.set("SubjectivityScore", std::clamp(ratio(subj, hits), 0.0, 1.0));
    w.set("PolarityScore", std::clamp(ratio(pol, hits), -1.0, 1.0));
    for (std::size_t e = 0; e < emo.size(); ++e) {
      w.set("Emotion" + emotion_names()[e], emo[e] / n_words);
    }
  }
  return v;
}

FeatureVector aggregate_text_features(std::span<const FeatureVector> sentences) {
  if (sentences.empty()) throw InvalidArgument("cannot aggregate features of zero sentences");
  FeatureVector out;
  for (int i = 0; i < kFeatureCount; ++i) {
    double sum = 0;
    std::size_t n = 0;
    bool all_valid = true;
    for (const auto& s : sentences) {
      if (s.values.size() != kFeatureCount || s.valid.size() != kFeatureCount) {
        throw InvalidArgument("feature vector has the wrong width");
      }
      if (s.valid[i]) {
        sum += s.values[i];
        ++n;
      } else {
        all_valid = false;
      }
    }
    out.values[i] = n ? sum / static_cast<double>(n) : 0.0;
    out.valid[i] = all_valid;
  }
  return out;
}

double feature_by_name(const FeatureVector& vector, std::string_view name) {
  return vector.values.at(static_cast<std::size_t>(feature_index(name)));
}

}  // namespace agerec
