#pragma once

#include "hqa/types.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hqa {

/// Distant-supervision labels y_t for every candidate of one question.
struct LabelSet {
  std::string question_id;
  std::map<EvidenceId, int> labels;

  int at(const EvidenceId& id) const;
  bool any_positive(Granularity g) const;

  bool operator==(const LabelSet&) const = default;
};

/// Labels every enumerated candidate by answer containment:
///   link  - its passage contains an answer
///   cell  - its value contains an answer (links are labeled separately)
///   row   - some cell value or linked passage in the row contains an answer
///   col   - some cell value or linked passage in the column contains an answer
LabelSet label_candidates(const Question& question, const HybridTable& table,
                          const PassageMap& passages);

/// Cell hit wins over link hit; no hit at all is Unanswerable.
GoldType derive_gold_type(const LabelSet& labels);

std::vector<LabelSet> label_dataset(const Dataset& ds);

/// JSON lines: {"question_id", "labels": [{"granularity","coords","y"}]}.
std::string labels_to_jsonl(const std::vector<LabelSet>& sets);
std::vector<LabelSet> read_labels(const std::filesystem::path& path);

}  // namespace hqa
