#include "agerec/model.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

using json = nlohmann::json;

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Naive: return "naive";
    case ModelKind::FeedForward: return "ff";
    case ModelKind::RandomForest: return "rf";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  const std::string n = utf8::to_lower(name);
  if (n == "naive") return ModelKind::Naive;
  if (n == "ff" || n == "feedforward" || n == "feed-forward") return ModelKind::FeedForward;
  if (n == "rf" || n == "randomforest" || n == "random-forest") return ModelKind::RandomForest;
  throw InvalidArgument("unknown model kind '" + std::string(name) + "' (naive, ff, rf)");
}

void TrainConfig::validate() const {
  if (hidden_layers < 0) throw InvalidArgument("hidden_layers must be >= 0");
  if (hidden_units <= 0) throw InvalidArgument("hidden_units must be positive");
  if (epochs <= 0) throw InvalidArgument("epochs must be positive");
  if (!(learning_rate > 0)) throw InvalidArgument("learning_rate must be positive");
  if (batch_size < 0) throw InvalidArgument("batch_size must be >= 0");
  if (n_estimators <= 0) throw InvalidArgument("n_estimators must be positive");
  if (max_depth < 0) throw InvalidArgument("max_depth must be >= 0");
  if (min_samples_leaf <= 0) throw InvalidArgument("min_samples_leaf must be positive");
}

int TrainConfig::effective_batch(std::size_t samples) const {
  if (batch_size > 0) return batch_size;
  return samples < 1024 ? static_cast<int>(std::max<std::size_t>(samples, 1)) : 128;
}

namespace {

std::string fnv_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json config_json(const TrainConfig& c) {
  return {{"kind", model_kind_name(c.kind)},
          {"hidden_layers", c.hidden_layers},
          {"hidden_units", c.hidden_units},
          {"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"n_estimators", c.n_estimators},
          {"max_depth", c.max_depth},
          {"min_samples_leaf", c.min_samples_leaf},
          {"seed", c.seed}};
}

TrainConfig config_from_json(const json& j) {
  TrainConfig c;
  c.kind = parse_model_kind(j.at("kind").get<std::string>());
  c.hidden_layers = j.at("hidden_layers").get<int>();
  c.hidden_units = j.at("hidden_units").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<int>();
  c.n_estimators = j.at("n_estimators").get<int>();
  c.max_depth = j.at("max_depth").get<int>();
  c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::vector<double> flat(const Eigen::MatrixXd& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

Eigen::MatrixXd unflat(const json& values, Eigen::Index rows, Eigen::Index cols) {
  const auto v = values.get<std::vector<double>>();
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) {
    throw ParseError("parameter block has " + std::to_string(v.size()) + " values, expected " +
                     std::to_string(rows * cols));
  }
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

Eigen::VectorXd to_vector(const json& values) {
  const auto v = values.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Schema Schema::of(std::vector<std::string> columns) {
  std::string joined;
  for (const auto& c : columns) joined += c + "\n";
  Schema s{std::move(columns), fnv_hex(joined)};
  return s;
}

std::string ModelArtifact::id() const {
  std::ostringstream out;
  write_model(out, *this);
  return std::string(model_kind_name(kind)) + "-" + fnv_hex(out.str()).substr(0, 8);
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t width) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw InvalidArgument("ragged input rows");
    for (std::size_t j = 0; j < width; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Eigen::MatrixXd targets_matrix(std::span<const AgeRange> targets) {
  Eigen::MatrixXd y(static_cast<Eigen::Index>(targets.size()), 2);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    y(static_cast<Eigen::Index>(i), 0) = targets[i].lo;
    y(static_cast<Eigen::Index>(i), 1) = targets[i].hi;
  }
  return y;
}

ModelArtifact train_model(const Schema& schema, const Eigen::MatrixXd& X,
                          std::span<const AgeRange> targets, const TrainConfig& config,
                          const std::string& corpus_fingerprint) {
  config.validate();
  if (targets.empty()) throw InvalidArgument("training set is empty");
  if (static_cast<std::size_t>(X.rows()) != targets.size()) {
    throw InvalidArgument("inputs and targets have different sample counts");
  }
  if (static_cast<std::size_t>(X.cols()) != schema.width()) {
    throw InvalidArgument("input width does not match the schema");
  }
  ModelArtifact m;
  m.kind = config.kind;
  m.schema = schema;
  m.metadata = ModelMetadata{config.seed, config, corpus_fingerprint, targets.size()};
  const Eigen::MatrixXd Y = targets_matrix(targets);
  switch (config.kind) {
    case ModelKind::Naive: m.params = naive_fit(targets); break;
    case ModelKind::FeedForward: m.params = FeedForward::train(X, Y, config); break;
    case ModelKind::RandomForest: m.params = RandomForest::train(X, Y, config); break;
  }
  return m;
}

std::vector<RangePrediction> predict_batch(const ModelArtifact& model, const Schema& schema,
                                           const Eigen::MatrixXd& X) {
  if (schema.fingerprint != model.schema.fingerprint) {
    throw SchemaMismatch("input schema " + schema.fingerprint + " (" +
                         std::to_string(schema.width()) + " columns) does not match model schema " +
                         model.schema.fingerprint + " (" + std::to_string(model.schema.width()) +
                         " columns)");
  }
  if (static_cast<std::size_t>(X.cols()) != model.schema.width()) {
    throw SchemaMismatch("input has " + std::to_string(X.cols()) + " columns, model expects " +
                         std::to_string(model.schema.width()));
  }
  if (!X.allFinite()) throw InvalidArgument("inputs contain NaN or infinite values");
  std::vector<RangePrediction> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  if (const auto* naive = std::get_if<NaiveModel>(&model.params)) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) out.push_back(naive->predict());
    return out;
  }
  Eigen::MatrixXd raw;
  if (const auto* ff = std::get_if<FeedForward>(&model.params)) raw = ff->predict(X);
  if (const auto* rf = std::get_if<RandomForest>(&model.params)) raw = rf->predict(X);
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    out.push_back(RangePrediction::normalize(raw(i, 0), raw(i, 1)));
  }
  return out;
}

RangePrediction predict(const ModelArtifact& model, const Schema& schema,
                        std::span<const double> row) {
  Eigen::MatrixXd X(1, static_cast<Eigen::Index>(row.size()));
  for (std::size_t j = 0; j < row.size(); ++j) X(0, static_cast<Eigen::Index>(j)) = row[j];
  return predict_batch(model, schema, X).front();
}

void write_model(std::ostream& out, const ModelArtifact& m) {
  json header = {{"format", "agerec-model"},
                 {"version", m.version},
                 {"kind", model_kind_name(m.kind)},
                 {"schema", {{"fingerprint", m.schema.fingerprint}, {"columns", m.schema.columns}}},
                 {"metadata",
                  {{"seed", m.metadata.seed},
                   {"config", config_json(m.metadata.config)},
                   {"corpus_fingerprint", m.metadata.corpus_fingerprint},
                   {"train_samples", m.metadata.train_samples}}}};
  std::vector<json> blocks;
  if (const auto* naive = std::get_if<NaiveModel>(&m.params)) {
    blocks.push_back({{"block", "naive"}, {"lo", naive->lo}, {"hi", naive->hi}});
  } else if (const auto* ff = std::get_if<FeedForward>(&m.params)) {
    blocks.push_back({{"block", "standardize"},
                      {"x_mean", flat(ff->x_mean_)},
                      {"x_scale", flat(ff->x_scale_)},
                      {"y_mean", flat(ff->y_mean_)},
                      {"y_scale", flat(ff->y_scale_)}});
    for (std::size_t l = 0; l < ff->weights_.size(); ++l) {
      blocks.push_back({{"block", "layer"},
                        {"index", l},
                        {"rows", ff->weights_[l].rows()},
                        {"cols", ff->weights_[l].cols()},
                        {"weights", flat(ff->weights_[l])},
                        {"bias", flat(ff->biases_[l])}});
    }
  } else if (const auto* rf = std::get_if<RandomForest>(&m.params)) {
    blocks.push_back({{"block", "forest"}, {"inputs", rf->inputs}, {"trees", rf->trees.size()}});
    for (const auto& tree : rf->trees) {
      json nodes = json::array();
      for (const auto& n : tree.nodes) {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.lo, n.hi});
      }
      blocks.push_back({{"block", "tree"}, {"nodes", std::move(nodes)}});
    }
  }
  header["blocks"] = blocks.size();
  out << header.dump() << '\n';
  for (const auto& b : blocks) out << b.dump() << '\n';
}

ModelArtifact read_model(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> json {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        return json::parse(line);
      } catch (const json::parse_error& e) {
        throw ParseError(source, line_no, std::string("corrupted model record: ") + e.what());
      }
    }
    throw ParseError(source, line_no, "truncated model file");
  };
  ModelArtifact m;
  try {
    const json header = next();
    if (!header.is_object() || header.value("format", "") != "agerec-model") {
      throw ParseError(source, line_no, "not an agerec model file");
    }
    m.version = header.at("version").get<int>();
    if (m.version != kModelFormatVersion) {
      throw ParseError(source, line_no,
                       "unsupported model format version " + std::to_string(m.version) +
                           " (this build reads version " + std::to_string(kModelFormatVersion) + ")");
    }
    m.kind = parse_model_kind(header.at("kind").get<std::string>());
    m.schema = Schema::of(header.at("schema").at("columns").get<std::vector<std::string>>());
    if (m.schema.fingerprint != header.at("schema").at("fingerprint").get<std::string>()) {
      throw ParseError(source, line_no, "schema fingerprint does not match its columns");
    }
    const auto& meta = header.at("metadata");
    m.metadata.seed = meta.at("seed").get<std::uint64_t>();
    m.metadata.config = config_from_json(meta.at("config"));
    m.metadata.corpus_fingerprint = meta.at("corpus_fingerprint").get<std::string>();
    m.metadata.train_samples = meta.at("train_samples").get<std::size_t>();
    const auto n_blocks = header.at("blocks").get<std::size_t>();
    std::vector<json> blocks;
    for (std::size_t i = 0; i < n_blocks; ++i) blocks.push_back(next());

    switch (m.kind) {
      case ModelKind::Naive: {
        if (blocks.size() != 1 || blocks[0].at("block") != "naive") {
          throw ParseError(source, line_no, "naive model needs one 'naive' block");
        }
        m.params = NaiveModel{blocks[0].at("lo").get<double>(), blocks[0].at("hi").get<double>()};
        break;
      }
      case ModelKind::FeedForward: {
        if (blocks.empty() || blocks[0].at("block") != "standardize") {
          throw ParseError(source, line_no, "feed-forward model needs a 'standardize' block first");
        }
        FeedForward ff;
        ff.x_mean_ = to_vector(blocks[0].at("x_mean"));
        ff.x_scale_ = to_vector(blocks[0].at("x_scale"));
        ff.y_mean_ = to_vector(blocks[0].at("y_mean"));
        ff.y_scale_ = to_vector(blocks[0].at("y_scale"));
        Eigen::Index prev = ff.x_mean_.size();
        for (std::size_t l = 1; l < blocks.size(); ++l) {
          const auto& b = blocks[l];
          if (b.at("block") != "layer") throw ParseError(source, line_no, "expected a 'layer' block");
          const auto rows = b.at("rows").get<Eigen::Index>(), cols = b.at("cols").get<Eigen::Index>();
          if (cols != prev) throw ParseError(source, line_no, "layer shapes do not chain");
          ff.weights_.push_back(unflat(b.at("weights"), rows, cols));
          ff.biases_.push_back(to_vector(b.at("bias")));
          if (ff.biases_.back().size() != rows) throw ParseError(source, line_no, "bias size mismatch");
          prev = rows;
        }
        if (ff.weights_.empty() || prev != 2 ||
            static_cast<std::size_t>(ff.x_mean_.size()) != m.schema.width()) {
          throw ParseError(source, line_no, "feed-forward shape does not match the schema");
        }
        m.params = std::move(ff);
        break;
      }
      case ModelKind::RandomForest: {
        if (blocks.empty() || blocks[0].at("block") != "forest") {
          throw ParseError(source, line_no, "random forest needs a 'forest' block first");
        }
        RandomForest rf;
        rf.inputs = blocks[0].at("inputs").get<int>();
        for (std::size_t t = 1; t < blocks.size(); ++t) {
          RegressionTree tree;
          for (const auto& n : blocks[t].at("nodes")) {
            tree.nodes.push_back(RegressionTree::Node{n.at(0).get<int>(), n.at(1).get<double>(),
                                                      n.at(2).get<int>(), n.at(3).get<int>(),
                                                      n.at(4).get<double>(), n.at(5).get<double>()});
          }
          const int count = static_cast<int>(tree.nodes.size());
          for (const auto& n : tree.nodes) {
            const bool leaf = n.feature < 0;
            if (count == 0 || (!leaf && (n.feature >= rf.inputs || n.left <= 0 || n.left >= count ||
                                         n.right <= 0 || n.right >= count))) {
              throw ParseError(source, line_no, "corrupted tree");
            }
          }
          rf.trees.push_back(std::move(tree));
        }
        if (rf.trees.size() != blocks[0].at("trees").get<std::size_t>() ||
            static_cast<std::size_t>(rf.inputs) != m.schema.width()) {
          throw ParseError(source, line_no, "random forest does not match its header");
        }
        m.params = std::move(rf);
        break;
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(source, line_no, std::string("malformed model record: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(source, line_no, e.what());
  }
  return m;
}

void save_model(const ModelArtifact& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model '" + path + "'");
  write_model(out, model);
  if (!out) throw Error("failed writing model '" + path + "'");
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model '" + path + "'");
  return read_model(in, path);
}

}  // namespace agerec
