#include "agerec/conllu.hpp"

#include <fstream>
#include <sstream>

#include "agerec/error.hpp"

namespace agerec {

namespace {

constexpr std::string_view kCapsComment = "agerec_capabilities";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    cols.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return cols;
}

std::string field(const std::string& s) { return s == "_" ? "" : s; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

// Pulls "Phon=..." out of MISC; returns the remaining MISC items.
std::string take_phonemes(const std::string& misc, std::vector<std::string>& phonemes) {
  std::string rest;
  for (const auto& item : split(misc, '|')) {
    if (item.rfind("Phon=", 0) == 0) {
      for (auto& p : split(item.substr(5), ',')) {
        if (!p.empty()) phonemes.push_back(p);
      }
    } else if (!item.empty()) {
      if (!rest.empty()) rest += '|';
      rest += item;
    }
  }
  return rest;
}

struct Pending {
  SentenceAnnotation sentence;
  std::optional<Capabilities> declared;
  std::size_t first_line = 0;
  bool any_upos = false, any_lemma = false, any_feats = false, any_head = false,
       any_phon = false;
};

}  // namespace

std::map<std::string, std::string> parse_feats_column(const std::string& column) {
  std::map<std::string, std::string> feats;
  if (column.empty() || column == "_") return feats;
  for (const auto& item : split(column, '|')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("malformed feature '" + item + "'");
    feats[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return feats;
}

std::string format_feats_column(const std::map<std::string, std::string>& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : feats) {
    if (!out.empty()) out += '|';
    out += k + "=" + v;
  }
  return out;
}

ConlluResult read_conllu(std::istream& in, const std::string& source) {
  ConlluResult result;
  Pending cur;
  std::size_t line_no = 0;

  auto finish = [&] {
    if (cur.sentence.tokens.empty()) {
      cur = Pending{};
      return;
    }
    auto& s = cur.sentence;
    s.provenance = Provenance::Ingested;
    Capabilities caps;
    if (cur.declared) {
      caps = *cur.declared;
    } else {
      if (cur.any_upos) caps = caps.with(Capability::Pos);
      if (cur.any_lemma) caps = caps.with(Capability::Lemma);
      if (cur.any_feats || cur.any_upos) caps = caps.with(Capability::Feats);
      if (cur.any_head) caps = caps.with(Capability::Dependency);
      if (cur.any_phon) caps = caps.with(Capability::Phoneme);
    }
    // Fill gaps so the declared layers are complete.
    for (auto& t : s.tokens) {
      if (caps.has(Capability::Pos) && t.upos.empty()) t.upos = "X";
      if (caps.has(Capability::Lemma) && t.lemma.empty()) t.lemma = t.form;
      if (!caps.has(Capability::Pos)) t.upos.clear();
      if (!caps.has(Capability::Lemma)) t.lemma.clear();
      if (!caps.has(Capability::Feats)) t.feats.clear();
      if (!caps.has(Capability::Phoneme)) t.phonemes.clear();
    }
    if (caps.has(Capability::Dependency) && !is_valid_tree(s.tokens)) {
      result.warnings.push_back(source + ":" + std::to_string(cur.first_line) + ": sentence '" +
                                s.sent_id + "' heads do not form a tree; dependencies dropped");
      caps = caps.without(Capability::Dependency);
    }
    if (!caps.has(Capability::Dependency)) {
      for (auto& t : s.tokens) {
        t.head = -1;
        t.deprel.clear();
      }
    }
    s.capabilities = caps;
    if (s.text.empty()) {
      for (const auto& t : s.tokens) {
        if (!s.text.empty()) s.text += ' ';
        s.text += t.form;
      }
    }
    result.sentences.push_back(std::move(s));
    cur = Pending{};
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      finish();
      continue;
    }
    if (cur.first_line == 0) cur.first_line = line_no;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = trim(line.substr(1, eq - 1));
      const auto value = trim(line.substr(eq + 1));
      if (key == "sent_id") cur.sentence.sent_id = value;
      else if (key == "text") cur.sentence.text = value;
      else if (key == kCapsComment) {
        try {
          cur.declared = Capabilities::parse(value);
        } catch (const InvalidArgument& e) {
          throw ParseError(source, line_no, e.what());
        }
      }
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError(source, line_no,
                       "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      result.warnings.push_back(source + ":" + std::to_string(line_no) +
                                ": skipped multiword/empty node '" + id + "'");
      continue;
    }
    int index = 0;
    try {
      std::size_t used = 0;
      index = std::stoi(id, &used);
      if (used != id.size()) throw std::invalid_argument(id);
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "bad token id '" + id + "'");
    }
    if (index != static_cast<int>(cur.sentence.tokens.size()) + 1) {
      throw ParseError(source, line_no, "token id " + id + " out of sequence");
    }
    if (cols[1].empty() || cols[1] == "_") {
      // "_" is a legitimate form only when the lemma says so.
      if (cols[1].empty()) throw ParseError(source, line_no, "empty FORM");
    }
    Token t;
    t.form = cols[1];
    t.lemma = field(cols[2]);
    t.upos = field(cols[3]);
    try {
      t.feats = parse_feats_column(cols[5]);
    } catch (const ParseError& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (cols[6] != "_") {
      try {
        std::size_t used = 0;
        t.head = std::stoi(cols[6], &used);
        if (used != cols[6].size() || t.head < 0) throw std::invalid_argument(cols[6]);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad HEAD '" + cols[6] + "'");
      }
      cur.any_head = true;
    }
    t.deprel = field(cols[7]);
    t.misc = take_phonemes(field(cols[9]), t.phonemes);
    cur.any_upos |= !t.upos.empty();
    cur.any_lemma |= !t.lemma.empty();
    cur.any_feats |= !t.feats.empty();
    cur.any_phon |= !t.phonemes.empty();
    cur.sentence.tokens.push_back(std::move(t));
  }
  finish();
  return result;
}

ConlluResult load_conllu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CoNLL-U file '" + path + "'");
  return read_conllu(in, path);
}

void write_conllu(std::ostream& out, const std::vector<SentenceAnnotation>& sentences) {
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const auto& s = sentences[si];
    out << "# sent_id = " << (s.sent_id.empty() ? std::to_string(si + 1) : s.sent_id) << '\n';
    if (!s.text.empty()) out << "# text = " << s.text << '\n';
    out << "# " << kCapsComment << " = " << s.capabilities.to_string() << '\n';
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      std::string misc = t.misc;
      if (!t.phonemes.empty()) {
        std::string phon = "Phon=";
        for (std::size_t k = 0; k < t.phonemes.size(); ++k) {
          if (k) phon += ',';
          phon += t.phonemes[k];
        }
        misc = misc.empty() ? phon : phon + "|" + misc;
      }
      auto col = [](const std::string& v) { return v.empty() ? std::string("_") : v; };
      out << (i + 1) << '\t' << t.form << '\t' << col(t.lemma) << '\t' << col(t.upos) << "\t_\t"
          << format_feats_column(t.feats) << '\t' << (t.head >= 0 ? std::to_string(t.head) : "_")
          << '\t' << col(t.deprel) << "\t_\t" << col(misc) << '\n';
    }
    out << '\n';
  }
}

void save_conllu(const std::string& path, const std::vector<SentenceAnnotation>& sentences) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write CoNLL-U file '" + path + "'");
  write_conllu(out, sentences);
}

}  // namespace agerec
