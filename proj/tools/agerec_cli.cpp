// agerec command-line tool. Every subcommand accepts --config FILE; values
// resolve as defaults < config file < AGEREC_* environment < flags.

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <unordered_map>

#include "agerec/conllu.hpp"
#include "agerec/corpus.hpp"
#include "agerec/error.hpp"
#include "agerec/evaluation.hpp"
#include "agerec/explain.hpp"
#include "agerec/metric_study.hpp"
#include "agerec/model.hpp"
#include "agerec/pipeline.hpp"
#include "agerec/report.hpp"
#include "agerec/resources.hpp"
#include "agerec/run_config.hpp"
#include "agerec/service.hpp"
#include "agerec/synthetic.hpp"

namespace fs = std::filesystem;
using namespace agerec;

namespace {

struct Context {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  RunConfig config;

  void resolve() {
    config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    apply_env_overrides(config);
    for (const auto& [k, v] : overrides) config.set(k, v);
    config.validate();
  }
};

// A flag that overrides a RunConfig key.
CLI::Option* keyed(CLI::App* sub, Context& ctx, const std::string& flag, const std::string& key,
                   const std::string& help) {
  return sub->add_option_function<std::string>(
      flag, [&ctx, key](const std::string& v) { ctx.overrides.emplace_back(key, v); },
      help + " [" + key + "]");
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

Corpus read_corpus_file(const std::string& path) {
  if (path.empty()) throw InvalidArgument("no corpus given (--in or 'corpus' in the config)");
  std::vector<std::string> warnings;
  Corpus c = load_corpus(path, &warnings);
  print_warnings(warnings);
  return c;
}

ResourceBundle resources_for(const RunConfig& config) {
  static bool warned = false;
  ResourceBundle r = config.resources.empty() ? ResourceBundle::bundled()
                                              : load_resources(config.resources);
  if (!warned) print_warnings(r.warnings);
  warned = true;
  return r;
}

Dataset dataset_for(const Corpus& corpus, const RunConfig& config, Level level) {
  const HeuristicAnnotator annotator;
  std::vector<std::string> warnings;
  const auto features = extract_corpus_features(corpus, annotator, resources_for(config), &warnings);
  print_warnings(warnings);
  return make_dataset(corpus, features, level);
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  f(out);
  if (!out) throw Error("failed writing '" + path + "'");
}

void echo_seed(const char* command, std::uint64_t seed) {
  std::cerr << command << ": seed " << seed << '\n';
}

std::vector<PredictionRecord> read_prediction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open predictions '" + path + "'");
  return read_predictions(in, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Readability and age-range recommendation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "agerec 0.1.0");
  Context ctx;
  app.add_option("--config", ctx.config_path, "key = value run configuration")
      ->check(CLI::ExistingFile);
  keyed(&app, ctx, "--resources", "resources", "resource directory (default: bundled samples)");

  std::string in, out, level_name_arg = "text", format_arg = "human";
  std::function<void()> run;

  // stats
  bool histogram = false;
  auto* stats = app.add_subcommand("stats", "corpus size and age statistics");
  stats->add_option("--in", in, "corpus file")->required();
  stats->add_option("--format", format_arg, "human or machine");
  stats->add_flag("--histogram", histogram, "also print the per-age histogram");
  stats->callback([&] {
    run = [&] {
      const Corpus c = read_corpus_file(in);
      const Format f = parse_format(format_arg);
      std::cout << render_stats(corpus_stats(c), f == Format::Machine);
      if (histogram) {
        const auto h = age_distribution(c);
        std::cout << (f == Format::Machine ? "age\ttexts\tsentences\n" : "\nage  texts  sentences\n");
        for (int x = 0; x <= AgeHistogram::kMaxAge; ++x) {
          if (f == Format::Machine) {
            std::cout << x << '\t' << h.texts[x] << '\t' << h.sentences[x] << '\n';
          } else {
            std::printf("%3d  %5zu  %9zu\n", x, h.texts[x], h.sentences[x]);
          }
        }
      }
    };
  });

  // split
  auto* split = app.add_subcommand("split", "train/validation/test split by original text");
  split->add_option("--in", in, "corpus file")->required();
  split->add_option("--out-dir", out, "directory for train/validation/test.jsonl")->required();
  keyed(split, ctx, "--seed", "seed", "shuffle seed");
  keyed(split, ctx, "--train", "split.train", "train fraction");
  keyed(split, ctx, "--validation", "split.validation", "validation fraction");
  keyed(split, ctx, "--test", "split.test", "test fraction");
  split->callback([&] {
    run = [&] {
      auto spec = ctx.config.split;
      echo_seed("split", spec.seed);
      const auto parts = split_corpus(read_corpus_file(in), spec);
      fs::create_directories(out);
      save_corpus((fs::path(out) / "train.jsonl").string(), parts.train);
      save_corpus((fs::path(out) / "validation.jsonl").string(), parts.validation);
      save_corpus((fs::path(out) / "test.jsonl").string(), parts.test);
      std::cout << "train " << parts.train.size() << "\nvalidation " << parts.validation.size()
                << "\ntest " << parts.test.size() << '\n';
    };
  });

  // segment
  std::size_t max_chars = 10000, target_chars = 5000;
  auto* segment = app.add_subcommand("segment", "cut long documents on paragraph boundaries");
  segment->add_option("--in", in, "corpus file")->required();
  segment->add_option("--out", out, "output corpus file (default stdout)");
  segment->add_option("--max-chars", max_chars, "documents longer than this are cut");
  segment->add_option("--target-chars", target_chars, "approximate segment size");
  segment->callback([&] {
    run = [&] {
      std::vector<std::string> warnings;
      const auto c = segment_long_documents(read_corpus_file(in), max_chars, target_chars, &warnings);
      print_warnings(warnings);
      with_output(out, [&](std::ostream& o) { write_corpus(o, c); });
    };
  });

  // synth
  std::size_t size = 300;
  std::string profile = "monotone";
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("--size", size, "number of documents");
  synth->add_option("--profile", profile, "monotone or noise");
  synth->add_option("--out", out, "output corpus file (default stdout)");
  keyed(synth, ctx, "--seed", "seed", "generator seed");
  synth->callback([&] {
    run = [&] {
      echo_seed("synth", ctx.config.seed);
      const auto c = generate_synthetic_corpus(ctx.config.seed, size, profile);
      with_output(out, [&](std::ostream& o) { write_corpus(o, c); });
    };
  });

  // annotate
  auto* annotate = app.add_subcommand("annotate", "annotate a corpus and write CoNLL-U");
  annotate->add_option("--in", in, "corpus file")->required();
  annotate->add_option("--out", out, "output .conllu (default stdout)");
  annotate->callback([&] {
    run = [&] {
      const Corpus c = read_corpus_file(in);
      const HeuristicAnnotator annotator;
      std::vector<SentenceAnnotation> all;
      std::vector<std::string> warnings;
      for (const auto& d : c.documents) {
        for (auto& s : annotate_document(d, annotator, &warnings)) all.push_back(std::move(s));
      }
      print_warnings(warnings);
      with_output(out, [&](std::ostream& o) { write_conllu(o, all); });
    };
  });

  // features
  auto* features = app.add_subcommand("features", "expert feature matrix (107 columns)");
  features->add_option("--in", in, "corpus file")->required();
  features->add_option("--level", level_name_arg, "text or sentence");
  features->add_option("--out", out, "output TSV (default stdout)");
  features->callback([&] {
    run = [&] {
      const auto ds = dataset_for(read_corpus_file(in), ctx.config, parse_level(level_name_arg));
      with_output(out, [&](std::ostream& o) {
        write_feature_matrix(o, ds.keys, expert_schema().columns, ds.X);
      });
    };
  });

  // train
  std::string validation_path;
  auto* train = app.add_subcommand("train", "train a model on expert features");
  keyed(train, ctx, "--in", "corpus", "training corpus");
  train->add_option("--validation", validation_path, "corpus to report validation μE on");
  train->add_option("--level", level_name_arg, "text or sentence");
  keyed(train, ctx, "--out", "model", "model file to write");
  keyed(train, ctx, "--kind", "train.kind", "naive, ff or rf");
  keyed(train, ctx, "--seed", "seed", "training seed");
  keyed(train, ctx, "--hidden-layers", "train.hidden_layers", "feed-forward hidden layers");
  keyed(train, ctx, "--hidden-units", "train.hidden_units", "units per hidden layer");
  keyed(train, ctx, "--epochs", "train.epochs", "feed-forward epochs");
  keyed(train, ctx, "--learning-rate", "train.learning_rate", "Adam learning rate");
  keyed(train, ctx, "--batch-size", "train.batch_size", "0 picks full batch or 128");
  keyed(train, ctx, "--estimators", "train.n_estimators", "random forest trees");
  keyed(train, ctx, "--max-depth", "train.max_depth", "tree depth limit, 0 for none");
  keyed(train, ctx, "--min-samples-leaf", "train.min_samples_leaf", "smallest leaf");
  train->callback([&] {
    run = [&] {
      const auto& cfg = ctx.config;
      if (cfg.model.empty()) throw InvalidArgument("no output model path (--out)");
      echo_seed("train", cfg.train.seed);
      const Corpus c = read_corpus_file(cfg.corpus);
      const Level level = parse_level(level_name_arg);
      const auto ds = dataset_for(c, cfg, level);
      const auto model =
          train_model(expert_schema(), ds.X, ds.targets, cfg.train, corpus_fingerprint(c));
      save_model(model, cfg.model);
      std::cout << "model " << model.id() << " (" << model_kind_name(model.kind) << ", "
                << ds.keys.size() << " " << level_name(level) << " samples) -> " << cfg.model
                << '\n';
      const double train_mu = mean_mu_e(ds.targets, predict_batch(model, expert_schema(), ds.X));
      std::cout << "train muE " << fixed2(train_mu) << '\n';
      if (!validation_path.empty()) {
        const auto vd = dataset_for(read_corpus_file(validation_path), cfg, level);
        const double v = mean_mu_e(vd.targets, predict_batch(model, expert_schema(), vd.X));
        std::cout << "validation muE " << fixed2(v) << '\n';
      }
    };
  });

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "predict age ranges for a corpus");
  keyed(predict_cmd, ctx, "--model", "model", "model file");
  predict_cmd->add_option("--in", in, "corpus file")->required();
  predict_cmd->add_option("--level", level_name_arg, "text or sentence");
  predict_cmd->add_option("--out", out, "prediction records (default stdout)");
  predict_cmd->callback([&] {
    run = [&] {
      if (ctx.config.model.empty()) throw InvalidArgument("no model given (--model)");
      const auto model = load_model(ctx.config.model);
      const auto ds = dataset_for(read_corpus_file(in), ctx.config, parse_level(level_name_arg));
      const auto preds = predict_batch(model, expert_schema(), ds.X);
      std::vector<PredictionRecord> records;
      for (std::size_t i = 0; i < preds.size(); ++i) records.push_back({ds.keys[i], preds[i]});
      with_output(out, [&](std::ostream& o) { write_predictions(o, records); });
    };
  });

  // evaluate
  std::string predictions_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against a corpus");
  evaluate_cmd->add_option("--predictions", predictions_path, "prediction records")->required();
  evaluate_cmd->add_option("--in", in, "reference corpus")->required();
  evaluate_cmd->add_option("--level", level_name_arg, "text or sentence");
  evaluate_cmd->add_option("--format", format_arg, "human or machine");
  keyed(evaluate_cmd, ctx, "--alpha", "metric.alpha", "theta-L2 angular weight");
  keyed(evaluate_cmd, ctx, "--beta", "metric.beta", "beta-IE weight");
  evaluate_cmd->callback([&] {
    run = [&] {
      const Corpus c = read_corpus_file(in);
      std::unordered_map<std::string, RangePrediction> preds;
      for (const auto& r : read_prediction_file(predictions_path)) {
        if (!preds.emplace(r.id, r.prediction).second) {
          throw InvalidArgument("duplicate prediction for '" + r.id + "'");
        }
      }
      const auto refs = parse_level(level_name_arg) == Level::Text ? text_references(c)
                                                                    : sentence_references(c);
      std::cout << render_report(evaluate(preds, refs, ctx.config.metric), parse_format(format_arg));
    };
  });

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "mean-aggregate sentence predictions per text");
  aggregate->add_option("--predictions", predictions_path, "sentence prediction records")->required();
  aggregate->add_option("--out", out, "text prediction records (default stdout)");
  aggregate->callback([&] {
    run = [&] {
      std::vector<std::string> order;
      std::map<std::string, std::vector<RangePrediction>> groups;
      for (const auto& r : read_prediction_file(predictions_path)) {
        const auto colon = r.id.rfind(':');
        if (colon == std::string::npos) {
          throw InvalidArgument("'" + r.id + "' is not a sentence key (doc_id:index)");
        }
        const auto doc = r.id.substr(0, colon);
        auto [it, fresh] = groups.try_emplace(doc);
        if (fresh) order.push_back(doc);
        it->second.push_back(r.prediction);
      }
      std::vector<PredictionRecord> records;
      for (const auto& doc : order) records.push_back({doc, aggregate_mean(groups[doc])});
      with_output(out, [&](std::ostream& o) { write_predictions(o, records); });
    };
  });

  // metric-study
  std::string study_arg = "default";
  std::size_t trials = 1000;
  auto* study_cmd = app.add_subcommand("metric-study", "rank metrics by footrule distance to a human ranking");
  study_cmd->add_option("--study", study_arg, "'default' or a study file");
  study_cmd->add_option("--trials", trials, "random-metric trials");
  study_cmd->add_option("--format", format_arg, "human or machine");
  keyed(study_cmd, ctx, "--seed", "seed", "random-metric seed");
  keyed(study_cmd, ctx, "--alpha", "metric.alpha", "theta-L2 angular weight");
  keyed(study_cmd, ctx, "--beta", "metric.beta", "beta-IE weight");
  study_cmd->callback([&] {
    run = [&] {
      echo_seed("metric-study", ctx.config.seed);
      const RankStudy study = study_arg == "default" ? default_study() : load_study(study_arg);
      std::vector<NamedMetric> metrics;
      for (auto m : all_metrics()) metrics.push_back({m, ctx.config.metric});
      const auto result = run_metric_study(study, metrics, trials, ctx.config.seed);
      const bool machine = parse_format(format_arg) == Format::Machine;
      std::size_t width = 8;
      for (const auto& row : result.rows) width = std::max(width, row.name.size() + 2);
      auto padded = [width](const std::string& s) { return s + std::string(width - s.size(), ' '); };
      std::cout << (machine ? "metric\tS\n" : padded("metric") + "S\n");
      char buf[64];
      for (const auto& row : result.rows) {
        if (machine) {
          std::snprintf(buf, sizeof buf, "%.17g", row.footrule);
          std::cout << row.name << '\t' << buf << '\n';
        } else {
          std::cout << padded(row.name) << fixed2(row.footrule) << '\n';
        }
      }
      if (machine) {
        std::snprintf(buf, sizeof buf, "%.17g", result.random_footrule_mean);
        std::cout << "random\t" << buf << '\n';
      } else {
        std::cout << padded("random") << fixed2(result.random_footrule_mean) << " (sd "
                  << fixed2(result.random_footrule_std) << ", " << result.random_trials
                  << " trials)\n";
      }
    };
  });

  // rank-features
  std::string method = "correlation";
  std::size_t top = 10;
  int repeats = 5;
  auto* rank = app.add_subcommand("rank-features", "correlation or permutation feature rankings");
  rank->add_option("--in", in, "corpus file")->required();
  rank->add_option("--level", level_name_arg, "text or sentence");
  rank->add_option("--method", method, "correlation or permutation");
  rank->add_option("--top", top, "rows per table (0 for all)");
  rank->add_option("--repeats", repeats, "shuffles per feature (permutation)");
  rank->add_option("--format", format_arg, "human or machine");
  keyed(rank, ctx, "--model", "model", "model; correlation then uses predicted ages");
  keyed(rank, ctx, "--seed", "seed", "shuffle seed (permutation)");
  rank->callback([&] {
    run = [&] {
      const auto ds = dataset_for(read_corpus_file(in), ctx.config, parse_level(level_name_arg));
      const Format f = parse_format(format_arg);
      auto cut = [&](FeatureRankTable t) {
        if (top > 0 && t.rows.size() > top) t.rows.resize(top);
        return t;
      };
      if (method == "permutation") {
        if (ctx.config.model.empty()) throw InvalidArgument("permutation needs --model");
        echo_seed("rank-features", ctx.config.seed);
        const auto model = load_model(ctx.config.model);
        std::cout << render_table(cut(permutation_ranking(model, expert_schema(), ds.X, ds.targets,
                                                          repeats, ctx.config.seed)),
                                  f);
        return;
      }
      if (method != "correlation") throw InvalidArgument("unknown method '" + method + "'");
      std::vector<double> ages;
      if (ctx.config.model.empty()) {
        for (const auto& t : ds.targets) ages.push_back(t.mean());
      } else {
        for (const auto& p : predict_batch(load_model(ctx.config.model), expert_schema(), ds.X)) {
          ages.push_back(p.mu);
        }
      }
      const auto ranking = correlation_ranking(ds.X, expert_schema().columns, ages);
      std::cout << render_table(cut(ranking.positive), f);
      if (f == Format::Human) std::cout << '\n';
      std::cout << render_table(cut(ranking.negative), f);
      if (f == Format::Human && !ranking.absent.empty()) {
        std::cout << "\n" << ranking.absent.size() << " features absent (degenerate variance or r = 0)\n";
      }
    };
  });

  // ablate
  std::string test_path, category_arg = "all";
  auto* ablate = app.add_subcommand("ablate", "retrain without each feature category");
  keyed(ablate, ctx, "--train", "corpus", "training corpus");
  ablate->add_option("--test", test_path, "test corpus")->required();
  ablate->add_option("--category", category_arg, "category name or 'all'");
  ablate->add_option("--level", level_name_arg, "text or sentence");
  keyed(ablate, ctx, "--kind", "train.kind", "naive, ff or rf");
  keyed(ablate, ctx, "--seed", "seed", "training seed");
  keyed(ablate, ctx, "--epochs", "train.epochs", "feed-forward epochs");
  keyed(ablate, ctx, "--estimators", "train.n_estimators", "random forest trees");
  ablate->callback([&] {
    run = [&] {
      std::vector<FeatureCategory> cats;
      if (category_arg == "all") {
        cats = all_categories();
      } else {
        cats.push_back(parse_category(category_arg));
      }
      const auto& cfg = ctx.config;
      echo_seed("ablate", cfg.train.seed);
      const Level level = parse_level(level_name_arg);
      const auto tr = dataset_for(read_corpus_file(cfg.corpus), cfg, level);
      const auto te = dataset_for(read_corpus_file(test_path), cfg, level);
      const auto full_model = train_model(expert_schema(), tr.X, tr.targets, cfg.train);
      const double full = mean_mu_e(te.targets, predict_batch(full_model, expert_schema(), te.X));
      std::cout << "category\tmuE\tdelta\n" << "(none)\t" << fixed2(full) << "\t--\n";
      for (auto c : cats) {
        const auto r = ablation(c, full, tr.X, tr.targets, te.X, te.targets, cfg.train);
        std::cout << category_name(c) << '\t' << fixed2(r.removed_mu_e) << '\t'
                  << (r.delta > 0 ? "+" : "") << fixed2(r.delta) << '\n';
      }
    };
  });

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "HTTP service: /recommend, /health, /registry");
  keyed(serve_cmd, ctx, "--model", "model", "model trained on expert features");
  keyed(serve_cmd, ctx, "--host", "service.host", "listen address");
  keyed(serve_cmd, ctx, "--port", "service.port", "listen port, 0 for any");
  keyed(serve_cmd, ctx, "--max-body", "service.max_body", "request size limit in bytes");
  keyed(serve_cmd, ctx, "--threads", "service.threads", "worker threads");
  serve_cmd->callback([&] {
    run = [&] {
      if (ctx.config.model.empty()) throw InvalidArgument("no model given (--model)");
      const Recommender recommender(load_model(ctx.config.model), resources_for(ctx.config),
                                    ctx.config.service.max_body);
      std::signal(SIGINT, [](int) { stop_service(); });
      std::signal(SIGTERM, [](int) { stop_service(); });
      serve(recommender, ctx.config.service, [&](int port) {
        std::cout << "listening on " << ctx.config.service.host << ":" << port << " (model "
                  << recommender.model_id() << ")" << std::endl;
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    ctx.resolve();
    if (run) run();
  } catch (const std::exception& e) {
    std::cerr << "agerec: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
