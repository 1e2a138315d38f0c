#include "agerec/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "agerec/error.hpp"
#include "agerec/utf8.hpp"

namespace agerec {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("bad value '" + value + "' for " + key);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("bad value '" + value + "' for " + key);
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, value] : RunConfig{}.entries()) k.push_back(name);
    return k;
  }();
  return keys;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {{"corpus", corpus},
          {"resources", resources},
          {"model", model},
          {"reports", reports},
          {"seed", std::to_string(seed)},
          {"split.train", real(split.train)},
          {"split.validation", real(split.validation)},
          {"split.test", real(split.test)},
          {"metric.alpha", real(metric.alpha)},
          {"metric.beta", real(metric.beta)},
          {"train.kind", std::string(model_kind_name(train.kind))},
          {"train.hidden_layers", std::to_string(train.hidden_layers)},
          {"train.hidden_units", std::to_string(train.hidden_units)},
          {"train.epochs", std::to_string(train.epochs)},
          {"train.learning_rate", real(train.learning_rate)},
          {"train.batch_size", std::to_string(train.batch_size)},
          {"train.n_estimators", std::to_string(train.n_estimators)},
          {"train.max_depth", std::to_string(train.max_depth)},
          {"train.min_samples_leaf", std::to_string(train.min_samples_leaf)},
          {"service.host", service.host},
          {"service.port", std::to_string(service.port)},
          {"service.max_body", std::to_string(service.max_body)},
          {"service.threads", std::to_string(service.threads)}};
}

void RunConfig::set(const std::string& key, const std::string& v) {
  if (key == "corpus") corpus = v;
  else if (key == "resources") resources = v;
  else if (key == "model") model = v;
  else if (key == "reports") reports = v;
  else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, v);
    split.seed = seed;
    train.seed = seed;
  }
  else if (key == "split.train") split.train = parse_real(key, v);
  else if (key == "split.validation") split.validation = parse_real(key, v);
  else if (key == "split.test") split.test = parse_real(key, v);
  else if (key == "metric.alpha") metric.alpha = parse_real(key, v);
  else if (key == "metric.beta") metric.beta = parse_real(key, v);
  else if (key == "train.kind") train.kind = parse_model_kind(v);
  else if (key == "train.hidden_layers") train.hidden_layers = parse_number<int>(key, v);
  else if (key == "train.hidden_units") train.hidden_units = parse_number<int>(key, v);
  else if (key == "train.epochs") train.epochs = parse_number<int>(key, v);
  else if (key == "train.learning_rate") train.learning_rate = parse_real(key, v);
  else if (key == "train.batch_size") train.batch_size = parse_number<int>(key, v);
  else if (key == "train.n_estimators") train.n_estimators = parse_number<int>(key, v);
  else if (key == "train.max_depth") train.max_depth = parse_number<int>(key, v);
  else if (key == "train.min_samples_leaf") train.min_samples_leaf = parse_number<int>(key, v);
  else if (key == "service.host") service.host = v;
  else if (key == "service.port") service.port = parse_number<int>(key, v);
  else if (key == "service.max_body") service.max_body = parse_number<std::size_t>(key, v);
  else if (key == "service.threads") service.threads = parse_number<int>(key, v);
  else throw InvalidArgument("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  split.validate();
  metric.validate();
  train.validate();
  if (service.port < 0 || service.port > 65535) throw InvalidArgument("service.port out of range");
  if (service.max_body == 0) throw InvalidArgument("service.max_body must be positive");
  if (service.threads <= 0) throw InvalidArgument("service.threads must be positive");
}

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  RunConfig config;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, n, "expected 'key = value'");
    try {
      config.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, n, e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  return parse_run_config(in, path);
}

std::string env_name(const std::string& key) {
  std::string out = "AGEREC_";
  for (char c : key) {
    out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

void apply_env_overrides(RunConfig& config, const EnvLookup& lookup) {
  for (const auto& key : run_config_keys()) {
    if (const auto v = lookup(env_name(key))) {
      try {
        config.set(key, *v);
      } catch (const InvalidArgument& e) {
        throw InvalidArgument(env_name(key) + ": " + e.what());
      }
    }
  }
}

void apply_env_overrides(RunConfig& config) {
  apply_env_overrides(config, [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  });
}

}  // namespace agerec
