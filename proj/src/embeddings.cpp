#include "agerec/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "agerec/error.hpp"

namespace agerec {

void EmbeddingTable::add(const std::string& key, std::vector<double> vec) {
  if (vec.empty()) throw InvalidArgument("embedding '" + key + "' is empty");
  if (dim_ == 0 && rows_.empty()) dim_ = vec.size();
  if (vec.size() != dim_) {
    throw InvalidArgument("embedding '" + key + "' has dimension " + std::to_string(vec.size()) +
                          ", table has " + std::to_string(dim_));
  }
  if (!rows_.emplace(key, std::move(vec)).second) {
    throw InvalidArgument("duplicate embedding key '" + key + "'");
  }
}

const std::vector<double>* EmbeddingTable::find(const std::string& key) const {
  const auto it = rows_.find(key);
  return it == rows_.end() ? nullptr : &it->second;
}

EmbeddingTable read_embeddings(std::istream& in, const std::string& source) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(source, line_no, "expected key<TAB>values");
    }
    std::istringstream values(line.substr(tab + 1));
    std::vector<double> vec;
    std::string tok;
    while (values >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        vec.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad value '" + tok + "'");
      }
    }
    try {
      table.add(line.substr(0, tab), std::move(vec));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file '" + path + "'");
  return read_embeddings(in, path);
}

}  // namespace agerec
