#pragma once

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agerec/corpus.hpp"
#include "agerec/interval_metrics.hpp"
#include "agerec/train_config.hpp"

namespace agerec {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_body = 64 * 1024;
  int threads = 4;
};

struct RunConfig {
  std::string corpus;
  std::string resources;  // directory; empty means the bundled sample lexicons
  std::string model;
  std::string reports = "reports";
  std::uint64_t seed = 1;
  SplitSpec split;
  MetricConfig metric;
  TrainConfig train;
  ServiceConfig service;

  // Sets one key ("train.epochs", "service.port", ...). Unknown keys and
  // unparsable values throw InvalidArgument naming the key.
  void set(const std::string& key, const std::string& value);
  void validate() const;
  // Every key with its current value, in documentation order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

const std::vector<std::string>& run_config_keys();

// "key = value" lines; '#' starts a comment line.
RunConfig parse_run_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);

// AGEREC_<KEY> with dots as underscores, e.g. AGEREC_TRAIN_EPOCHS. The
// lookup is injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
void apply_env_overrides(RunConfig& config, const EnvLookup& lookup);
void apply_env_overrides(RunConfig& config);
std::string env_name(const std::string& key);

}  // namespace agerec
