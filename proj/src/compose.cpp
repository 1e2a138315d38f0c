#include "agerec/compose.hpp"

#include "agerec/error.hpp"

namespace agerec {

InputSource InputSource::expert(const std::unordered_map<std::string, FeatureVector>& vectors) {
  InputSource s;
  s.name = "expert";
  for (const auto& f : feature_registry()) s.columns.push_back(f.name);
  for (const auto& [key, v] : vectors) s.rows.emplace(key, v.values);
  return s;
}

InputSource InputSource::embedding(const std::string& name, const EmbeddingTable& table) {
  InputSource s;
  s.name = name;
  for (std::size_t k = 0; k < table.dim(); ++k) s.columns.push_back(name + "_" + std::to_string(k));
  s.rows = table.rows();
  return s;
}

InputSource InputSource::columns_of(const std::string& name, std::vector<std::string> columns,
                                    std::unordered_map<std::string, std::vector<double>> rows) {
  InputSource s{name, std::move(columns), std::move(rows)};
  for (const auto& [key, row] : s.rows) {
    if (row.size() != s.columns.size()) {
      throw InvalidArgument("source '" + name + "' row '" + key + "' has the wrong width");
    }
  }
  return s;
}

InputMatrix compose_input(const std::vector<std::string>& keys,
                          const std::vector<InputSource>& sources) {
  if (sources.empty()) throw InvalidArgument("compose_input needs at least one source");
  InputMatrix m;
  for (const auto& s : sources) m.columns.insert(m.columns.end(), s.columns.begin(), s.columns.end());
  for (const auto& key : keys) {
    std::vector<double> row;
    row.reserve(m.columns.size());
    bool complete = true;
    for (const auto& s : sources) {
      const auto it = s.rows.find(key);
      if (it == s.rows.end()) {
        complete = false;
        break;
      }
      row.insert(row.end(), it->second.begin(), it->second.end());
    }
    if (!complete) {
      ++m.dropped;
      continue;
    }
    m.keys.push_back(key);
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace agerec
