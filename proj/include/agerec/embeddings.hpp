#pragma once

#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

namespace agerec {

// Externally computed vectors keyed by sentence key ("doc_id:index"), a
// document id, or any other string the caller agrees on.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  // Throws on dimension mismatch or duplicate key.
  void add(const std::string& key, std::vector<double> vec);
  // nullptr when the key is absent; never a zero vector.
  const std::vector<double>* find(const std::string& key) const;
  const std::unordered_map<std::string, std::vector<double>>& rows() const { return rows_; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

// One record per line: key<TAB>v1 v2 ... (values separated by spaces or
// tabs). The first record fixes the dimension.
EmbeddingTable read_embeddings(std::istream& in, const std::string& source = "<embeddings>");
EmbeddingTable load_embeddings(const std::string& path);

}  // namespace agerec
