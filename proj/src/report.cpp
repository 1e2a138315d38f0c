#include "agerec/report.hpp"

#include <cstdio>
#include <sstream>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

Format parse_format(std::string_view name) {
  const auto n = utf8::to_lower(name);
  if (n == "human" || n == "table") return Format::Human;
  if (n == "machine" || n == "tsv") return Format::Machine;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (human, machine)");
}

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

namespace {

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  const std::size_t n = utf8::length(s);
  if (n >= width) return s;
  const std::string fill(width - n, ' ');
  return right ? fill + s : s + fill;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

double to_double(const std::string& s, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "not a number: '" + s + "'");
  }
}

std::size_t to_count(const std::string& s, const std::string& source, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(source, line, "not a count: '" + s + "'");
  }
  return std::stoull(s);
}

template <typename F>
void for_each_record(std::string_view text, const std::string& header, const std::string& source,
                     std::size_t columns, F&& f) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw ParseError(source, n, "unexpected header '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != columns) {
      throw ParseError(source, n, "expected " + std::to_string(columns) + " fields, got " +
                                      std::to_string(fields.size()));
    }
    f(fields, n);
  }
}

const std::string kReportHeader = "section\tbucket\tcount\tmu_e\ttheta_l2\tbeta_ie";
const std::string kTableHeader = "method\trank\tname\tscore";
const std::string kPredictionHeader = "id\tlo\thi\tmu\tnormalized";

}  // namespace

std::string render_report(const EvalReport& r, Format format) {
  struct Row {
    std::string section, bucket;
    Scores s;
  };
  std::vector<Row> rows;
  if (r.overall.count) rows.push_back({"overall", "all", r.overall});
  for (const auto& [k, s] : r.genres) {
    if (s.count) rows.push_back({"genre", k, s});
  }
  for (int x = 0; x < kAgeBuckets; ++x) {
    if (r.ages[x].count) rows.push_back({"age", std::to_string(x), r.ages[x]});
  }
  for (const auto& [k, s] : r.ranges) {
    if (s.count) rows.push_back({"range", k, s});
  }

  std::ostringstream out;
  if (format == Format::Machine) {
    out << kReportHeader << '\n';
    for (const auto& row : rows) {
      out << row.section << '\t' << row.bucket << '\t' << row.s.count << '\t' << full(row.s.mu_e)
          << '\t' << full(row.s.theta_l2) << '\t' << full(row.s.beta_ie) << '\n';
    }
    return out.str();
  }
  out << pad("section", 9) << pad("bucket", 14) << pad("count", 7, true) << pad("muE", 9, true)
      << pad("theta-L2", 10, true) << pad("beta-IE", 9, true) << '\n';
  for (const auto& row : rows) {
    out << pad(row.section, 9) << pad(row.bucket, 14) << pad(std::to_string(row.s.count), 7, true)
        << pad(fixed2(row.s.mu_e), 9, true) << pad(fixed2(row.s.theta_l2), 10, true)
        << pad(fixed2(row.s.beta_ie), 9, true) << '\n';
  }
  return out.str();
}

EvalReport parse_report(std::string_view text) {
  const std::string source = "<report>";
  EvalReport r;
  for_each_record(text, kReportHeader, source, 6, [&](const auto& f, std::size_t n) {
    const Scores s{to_count(f[2], source, n), to_double(f[3], source, n),
                   to_double(f[4], source, n), to_double(f[5], source, n)};
    if (f[0] == "overall") {
      r.overall = s;
    } else if (f[0] == "genre") {
      r.genres[f[1]] = s;
    } else if (f[0] == "range") {
      r.ranges[f[1]] = s;
    } else if (f[0] == "age") {
      const auto x = to_count(f[1], source, n);
      if (x >= static_cast<std::size_t>(kAgeBuckets)) throw ParseError(source, n, "age out of range");
      r.ages[x] = s;
    } else {
      throw ParseError(source, n, "unknown section '" + f[0] + "'");
    }
  });
  return r;
}

std::string render_table(const FeatureRankTable& t, Format format) {
  std::ostringstream out;
  if (format == Format::Machine) {
    out << kTableHeader << '\n';
    for (const auto& row : t.rows) {
      out << t.method << '\t' << row.rank << '\t' << row.name << '\t' << full(row.score) << '\n';
    }
    return out.str();
  }
  std::size_t width = 8;
  for (const auto& row : t.rows) width = std::max(width, utf8::length(row.name) + 2);
  out << "# " << t.method << '\n';
  out << pad("rank", 6) << pad("feature", width) << pad("score", 8, true) << '\n';
  for (const auto& row : t.rows) {
    out << pad(std::to_string(row.rank), 6) << pad(row.name, width)
        << pad(fixed2(row.score), 8, true) << '\n';
  }
  return out.str();
}

FeatureRankTable parse_table(std::string_view text) {
  const std::string source = "<table>";
  FeatureRankTable t;
  for_each_record(text, kTableHeader, source, 4, [&](const auto& f, std::size_t n) {
    if (t.rows.empty()) {
      t.method = f[0];
    } else if (t.method != f[0]) {
      throw ParseError(source, n, "mixed methods in one table");
    }
    t.rows.push_back({f[2], to_double(f[3], source, n), static_cast<int>(to_count(f[1], source, n))});
  });
  return t;
}

void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records) {
  out << kPredictionHeader << '\n';
  for (const auto& r : records) {
    out << r.id << '\t' << full(r.prediction.lo) << '\t' << full(r.prediction.hi) << '\t'
        << full(r.prediction.mu) << '\t' << (r.prediction.normalized ? 1 : 0) << '\n';
  }
}

std::vector<PredictionRecord> read_predictions(std::istream& in, const std::string& source) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<PredictionRecord> out;
  for_each_record(buf.str(), kPredictionHeader, source, 5, [&](const auto& f, std::size_t n) {
    RangePrediction p;
    p.lo = to_double(f[1], source, n);
    p.hi = to_double(f[2], source, n);
    p.mu = to_double(f[3], source, n);
    if (f[4] != "0" && f[4] != "1") throw ParseError(source, n, "normalized must be 0 or 1");
    p.normalized = f[4] == "1";
    if (!(p.lo <= p.hi)) throw ParseError(source, n, "lo > hi for '" + f[0] + "'");
    out.push_back({f[0], p});
  });
  return out;
}

}  // namespace agerec
