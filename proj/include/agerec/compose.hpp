#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "agerec/embeddings.hpp"
#include "agerec/features.hpp"

namespace agerec {

// A block of columns keyed by record: expert features, an embedding table
// or prediction columns of another model.
struct InputSource {
  std::string name;
  std::vector<std::string> columns;
  std::unordered_map<std::string, std::vector<double>> rows;

  static InputSource expert(const std::unordered_map<std::string, FeatureVector>& vectors);
  static InputSource embedding(const std::string& name, const EmbeddingTable& table);
  static InputSource columns_of(const std::string& name, std::vector<std::string> columns,
                                std::unordered_map<std::string, std::vector<double>> rows);
};

struct InputMatrix {
  std::vector<std::string> keys;     // kept records, in the requested order
  std::vector<std::string> columns;  // concatenated column names
  std::vector<std::vector<double>> rows;
  std::size_t dropped = 0;           // records missing from some source
};

// Column-wise concatenation in source order. Records absent from any source
// are dropped and counted. Throws for an empty source list.
InputMatrix compose_input(const std::vector<std::string>& keys,
                          const std::vector<InputSource>& sources);

}  // namespace agerec
