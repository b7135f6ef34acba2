#pragma once

#include "hqa/ablation.hpp"
#include "hqa/loss.hpp"
#include "hqa/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hqa {

/// Everything a command needs. Built from an optional JSON config file,
/// then overridden by command-line flags.
struct RunConfig {
  std::filesystem::path dataset;
  std::filesystem::path labels;
  std::filesystem::path scores;
  std::filesystem::path predictions;
  std::filesystem::path metrics;
  std::filesystem::path model;
  TrainConfig train;
  std::size_t max_span_tokens = 2;
  std::vector<Mode> modes;  // empty means all five
  std::optional<std::uint64_t> seed;
  SynthSpec synth;
};

/// Reads the JSON config file. Unknown keys are rejected with UsageError.
RunConfig load_run_config(const std::filesystem::path& path);

int cmd_ingest(const RunConfig& cfg, std::ostream& out);
int cmd_label(const RunConfig& cfg);
int cmd_train(const RunConfig& cfg);
int cmd_predict(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg);
int cmd_ablate(const RunConfig& cfg);
int cmd_gensynth(const RunConfig& cfg);

/// Per-mode metrics path: "out/m.json" with mode cell gives "out/m.cell.json".
std::filesystem::path mode_metrics_path(const std::filesystem::path& metrics, Mode mode);

/// Entry point. Exit codes: 0 success, 2 usage or input error, 1 internal error.
/// Diagnostics go to `err`; command output (ingest counts) to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace hqa
