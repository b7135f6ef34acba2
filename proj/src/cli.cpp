#include "hqa/cli.hpp"

#include "hqa/dataset.hpp"
#include "hqa/errors.hpp"
#include "hqa/io.hpp"
#include "hqa/labels.hpp"
#include "hqa/metrics.hpp"
#include "hqa/reader.hpp"
#include "hqa/score_io.hpp"
#include "hqa/scorer.hpp"
#include "hqa/train.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <set>

namespace hqa {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         std::string_view where) {
  if (!obj.is_object()) throw UsageError(fmt::format("config: {} must be an object", where));
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw UsageError(fmt::format("config: unknown key '{}' in {}", key, where));
  }
}

template <typename T>
void read_key(const json& obj, const char* key, T& dst) {
  if (auto it = obj.find(key); it != obj.end()) dst = it->get<T>();
}

void require_path(const std::filesystem::path& p, std::string_view flag) {
  if (p.empty()) throw UsageError(fmt::format("missing required --{}", flag));
}

std::vector<LabelSet> labels_for(const RunConfig& cfg, const Dataset& ds) {
  if (!cfg.labels.empty()) return read_labels(cfg.labels);
  return label_dataset(ds);
}

// Scores in dataset question order, from --scores if given, else from --model.
std::vector<ScoreSet> scores_for(const RunConfig& cfg, const Dataset& ds) {
  if (!cfg.scores.empty()) {
    auto imported = import_scores(cfg.scores, ds);
    std::vector<ScoreSet> out;
    out.reserve(ds.questions.size());
    for (const auto& q : ds.questions) {
      auto it = imported.find(q.id);
      if (it == imported.end()) throw IncompleteScores(q.id, "<all>");
      out.push_back(std::move(it->second));
    }
    return out;
  }
  if (!cfg.model.empty()) return score_dataset(load_model(cfg.model), ds);
  throw UsageError("need --model or --scores");
}

std::vector<Prediction> predict_all(const Dataset& ds, const std::vector<ScoreSet>& scores,
                                    const SpanReader& reader) {
  std::vector<Prediction> out;
  out.reserve(ds.questions.size());
  for (std::size_t k = 0; k < ds.questions.size(); ++k) {
    const auto& q = ds.questions[k];
    out.push_back(answer_question(q, ds.table_for(q), ds.passages, scores[k], reader));
  }
  return out;
}

void configure_logging() {
  auto logger = spdlog::get("hqa");
  if (!logger) {
    logger = spdlog::stderr_logger_st("hqa");
    spdlog::set_default_logger(logger);
  }
  const char* env = std::getenv("MUGER_LOG");
  const std::string level = env ? env : "warn";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::warn);
    spdlog::warn("ignoring MUGER_LOG={}; expected error, warn, info or debug", level);
  }
}

// Flag values; unset ones leave the config file (or defaults) alone.
struct Flags {
  std::optional<std::string> config, dataset, labels, scores, predictions, metrics, model;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> modes;
  std::optional<int> group_size, epochs;
  std::optional<double> tau, lr, noise_rate;
  std::optional<std::size_t> max_span_tokens;
  std::optional<std::size_t> n_questions, min_rows, max_rows, min_cols, max_cols, min_links,
      max_links, vocab_size;
  std::optional<double> in_table_fraction, distractor_rate;
};

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config file; flags override it");
  app.add_option("--dataset", f.dataset, "dataset file");
  app.add_option("--labels", f.labels, "labels file");
  app.add_option("--scores", f.scores, "external score file");
  app.add_option("--predictions", f.predictions, "predictions file");
  app.add_option("--metrics", f.metrics, "metrics file");
  app.add_option("--model", f.model, "model file");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--mode", f.modes, "ablation mode (repeatable): col, row, cell, link, multi");
  app.add_option("--group-size", f.group_size, "instances per granularity group");
  app.add_option("--tau", f.tau, "contrastive temperature");
  app.add_option("--epochs", f.epochs, "training epochs");
  app.add_option("--lr", f.lr, "learning rate");
  app.add_option("--noise-rate", f.noise_rate, "feature dropout rate of the positive view");
  app.add_option("--max-span-tokens", f.max_span_tokens, "longest reader span");
  app.add_option("--n-questions", f.n_questions, "synthetic questions");
  app.add_option("--min-rows", f.min_rows);
  app.add_option("--max-rows", f.max_rows);
  app.add_option("--min-cols", f.min_cols);
  app.add_option("--max-cols", f.max_cols);
  app.add_option("--min-links", f.min_links);
  app.add_option("--max-links", f.max_links);
  app.add_option("--vocab-size", f.vocab_size);
  app.add_option("--in-table-fraction", f.in_table_fraction);
  app.add_option("--distractor-rate", f.distractor_rate);
}

template <typename T, typename U>
void overlay(const std::optional<T>& flag, U& dst) {
  if (flag) dst = *flag;
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg = f.config ? load_run_config(*f.config) : RunConfig{};
  overlay(f.dataset, cfg.dataset);
  overlay(f.labels, cfg.labels);
  overlay(f.scores, cfg.scores);
  overlay(f.predictions, cfg.predictions);
  overlay(f.metrics, cfg.metrics);
  overlay(f.model, cfg.model);
  if (f.seed) cfg.seed = f.seed;
  if (!f.modes.empty()) {
    cfg.modes.clear();
    for (const auto& m : f.modes) cfg.modes.push_back(mode_from_string(m));
  }
  if (f.group_size) {
    cfg.train.group_size = *f.group_size;
    cfg.train.negatives_per_positive = *f.group_size - 1;
  }
  overlay(f.epochs, cfg.train.epochs);
  overlay(f.tau, cfg.train.tau);
  overlay(f.lr, cfg.train.learning_rate);
  overlay(f.noise_rate, cfg.train.feature_noise_rate);
  overlay(f.max_span_tokens, cfg.max_span_tokens);
  overlay(f.n_questions, cfg.synth.n_questions);
  overlay(f.min_rows, cfg.synth.min_rows);
  overlay(f.max_rows, cfg.synth.max_rows);
  overlay(f.min_cols, cfg.synth.min_cols);
  overlay(f.max_cols, cfg.synth.max_cols);
  overlay(f.min_links, cfg.synth.min_links);
  overlay(f.max_links, cfg.synth.max_links);
  overlay(f.vocab_size, cfg.synth.vocab_size);
  overlay(f.in_table_fraction, cfg.synth.in_table_fraction);
  overlay(f.distractor_rate, cfg.synth.distractor_rate);
  return cfg;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  RunConfig cfg;
  try {
    reject_unknown_keys(doc,
                        {"dataset", "labels", "scores", "predictions", "metrics", "model", "seed",
                         "modes", "max_span_tokens", "train", "synth"},
                        "config");
    auto path_key = [&](const char* key, std::filesystem::path& dst) {
      if (auto it = doc.find(key); it != doc.end()) dst = it->get<std::string>();
    };
    path_key("dataset", cfg.dataset);
    path_key("labels", cfg.labels);
    path_key("scores", cfg.scores);
    path_key("predictions", cfg.predictions);
    path_key("metrics", cfg.metrics);
    path_key("model", cfg.model);
    if (auto it = doc.find("seed"); it != doc.end()) cfg.seed = it->get<std::uint64_t>();
    if (auto it = doc.find("modes"); it != doc.end()) {
      for (const auto& m : *it) cfg.modes.push_back(mode_from_string(m.get<std::string>()));
    }
    read_key(doc, "max_span_tokens", cfg.max_span_tokens);

    if (auto it = doc.find("train"); it != doc.end()) {
      const json& t = *it;
      reject_unknown_keys(t,
                          {"tau", "lr", "epochs", "group_size", "negatives_per_positive",
                           "noise_rate", "full_batch", "cl_denominator_includes_positive"},
                          "train");
      read_key(t, "tau", cfg.train.tau);
      read_key(t, "lr", cfg.train.learning_rate);
      read_key(t, "epochs", cfg.train.epochs);
      read_key(t, "group_size", cfg.train.group_size);
      cfg.train.negatives_per_positive = cfg.train.group_size - 1;
      read_key(t, "negatives_per_positive", cfg.train.negatives_per_positive);
      read_key(t, "noise_rate", cfg.train.feature_noise_rate);
      read_key(t, "full_batch", cfg.train.full_batch);
      read_key(t, "cl_denominator_includes_positive", cfg.train.cl_denominator_includes_positive);
    }
    if (auto it = doc.find("synth"); it != doc.end()) {
      const json& sy = *it;
      reject_unknown_keys(sy,
                          {"n_questions", "min_rows", "max_rows", "min_cols", "max_cols",
                           "min_links", "max_links", "in_table_fraction", "distractor_rate",
                           "vocab_size"},
                          "synth");
      read_key(sy, "n_questions", cfg.synth.n_questions);
      read_key(sy, "min_rows", cfg.synth.min_rows);
      read_key(sy, "max_rows", cfg.synth.max_rows);
      read_key(sy, "min_cols", cfg.synth.min_cols);
      read_key(sy, "max_cols", cfg.synth.max_cols);
      read_key(sy, "min_links", cfg.synth.min_links);
      read_key(sy, "max_links", cfg.synth.max_links);
      read_key(sy, "in_table_fraction", cfg.synth.in_table_fraction);
      read_key(sy, "distractor_rate", cfg.synth.distractor_rate);
      read_key(sy, "vocab_size", cfg.synth.vocab_size);
    }
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config {}: {}", path.string(), e.what()));
  }
  return cfg;
}

std::filesystem::path mode_metrics_path(const std::filesystem::path& metrics, Mode mode) {
  auto out = metrics;
  out.replace_filename(fmt::format("{}.{}{}", metrics.stem().string(), to_string(mode),
                                   metrics.has_extension() ? metrics.extension().string() : ".json"));
  return out;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.dataset, "dataset");
  const Dataset ds = load_dataset(cfg.dataset);
  std::size_t in_table = 0, in_passage = 0, untyped = 0;
  for (const auto& q : ds.questions) {
    if (!q.gold_type) {
      ++untyped;
    } else if (*q.gold_type == AnswerType::InTable) {
      ++in_table;
    } else {
      ++in_passage;
    }
  }
  fmt::print(out, "tables {}\npassages {}\nquestions {}\nin_table {}\nin_passage {}\nuntyped {}\n",
             ds.tables.size(), ds.passages.size(), ds.questions.size(), in_table, in_passage,
             untyped);
  return 0;
}

int cmd_label(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  require_path(cfg.labels, "labels");
  const Dataset ds = load_dataset(cfg.dataset);
  write_file_atomic(cfg.labels, labels_to_jsonl(label_dataset(ds)));
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  require_path(cfg.model, "model");
  if (!cfg.seed) throw UsageError("train needs --seed");
  TrainConfig tc = cfg.train;
  tc.seed = *cfg.seed;
  tc.validate();
  const Dataset ds = load_dataset(cfg.dataset);
  const auto labels = labels_for(cfg, ds);
  const auto result = train_with_report(ds, labels, tc);
  if (!result.epoch_losses.empty()) {
    spdlog::info("loss {:.6f} -> {:.6f}", result.epoch_losses.front(), result.epoch_losses.back());
  }
  write_file_atomic(cfg.model, model_to_json(result.scorer));
  return 0;
}

int cmd_predict(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  require_path(cfg.predictions, "predictions");
  const Dataset ds = load_dataset(cfg.dataset);
  const auto scores = scores_for(cfg, ds);
  const ProximityReader reader(cfg.max_span_tokens);
  write_file_atomic(cfg.predictions, predictions_to_jsonl(predict_all(ds, scores, reader)));
  return 0;
}

int cmd_eval(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  require_path(cfg.predictions, "predictions");
  require_path(cfg.metrics, "metrics");
  const Dataset ds = load_dataset(cfg.dataset);
  const auto predictions = import_predictions(cfg.predictions, ds);
  const auto labels = labels_for(cfg, ds);
  const auto scores = scores_for(cfg, ds);
  write_file_atomic(cfg.metrics, metrics_to_json(evaluate(predictions, ds, labels, scores)));
  return 0;
}

int cmd_ablate(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  require_path(cfg.metrics, "metrics");
  const Dataset ds = load_dataset(cfg.dataset);
  const auto labels = labels_for(cfg, ds);
  const auto scores = scores_for(cfg, ds);
  const ProximityReader reader(cfg.max_span_tokens);
  const std::vector<Mode> modes =
      cfg.modes.empty() ? std::vector<Mode>(kAllModes.begin(), kAllModes.end()) : cfg.modes;
  for (const auto& [mode, report] : ablate(ds, labels, scores, reader, modes)) {
    write_file_atomic(mode_metrics_path(cfg.metrics, mode), metrics_to_json(report));
  }
  return 0;
}

int cmd_gensynth(const RunConfig& cfg) {
  require_path(cfg.dataset, "dataset");
  if (!cfg.seed) throw UsageError("gensynth needs --seed");
  SynthSpec spec = cfg.synth;
  spec.seed = *cfg.seed;
  write_file_atomic(cfg.dataset, dataset_to_json(generate_synthetic(spec)).dump(2) + "\n");
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging();

  CLI::App app("Multi-granularity evidence retrieval and selection over hybrid tables");
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"ingest", "validate a dataset and print entity counts"},
      {"label", "write distant-supervision labels"},
      {"train", "train the evidence scorer"},
      {"predict", "answer every question"},
      {"eval", "score predictions"},
      {"ablate", "evaluate single-granularity baselines"},
      {"gensynth", "generate a synthetic dataset"},
  };
  for (const auto& c : commands) add_common(*app.add_subcommand(c.name, c.help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  }

  try {
    const RunConfig cfg = resolve(flags);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "ingest") return cmd_ingest(cfg, out);
    if (name == "label") return cmd_label(cfg);
    if (name == "train") return cmd_train(cfg);
    if (name == "predict") return cmd_predict(cfg);
    if (name == "eval") return cmd_eval(cfg);
    if (name == "ablate") return cmd_ablate(cfg);
    return cmd_gensynth(cfg);
  } catch (const UsageError& e) {
    fmt::print(err, "usage error: {}\n", e.what());
    return 2;
  } catch (const SchemaError& e) {
    fmt::print(err, "schema error in {}: {}\n", e.entity(), e.what());
    return 2;
  } catch (const ParseError& e) {
    fmt::print(err, "parse error: {}\n", e.what());
    return 2;
  } catch (const UnknownQuestion& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const MissingPrediction& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const IncompleteScores& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const DimensionMismatch& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(err, "internal error: {}\n", e.what());
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace hqa
