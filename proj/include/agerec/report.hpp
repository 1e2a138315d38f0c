#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "agerec/evaluation.hpp"
#include "agerec/explain.hpp"

namespace agerec {

enum class Format { Human, Machine };
Format parse_format(std::string_view name);

// Human tables use 2 decimals and list only non-empty buckets. Machine
// output is tab-separated with a header row and full precision, and
// parses back to an equal value.
std::string render_report(const EvalReport& report, Format format);
EvalReport parse_report(std::string_view machine_text);

std::string render_table(const FeatureRankTable& table, Format format);
FeatureRankTable parse_table(std::string_view machine_text);

// Prediction records: id, lo, hi, mu, normalized.
struct PredictionRecord {
  std::string id;
  RangePrediction prediction;
};
void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records);
std::vector<PredictionRecord> read_predictions(std::istream& in,
                                               const std::string& source = "<predictions>");

// "%.2f" without the negative zero.
std::string fixed2(double v);

}  // namespace agerec
