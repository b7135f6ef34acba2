#pragma once

#include "hqa/labels.hpp"
#include "hqa/scorer.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hqa {

/// One JSON line per candidate: {"question_id","granularity","coords","score"}.
/// Scores are written with round-trip precision.
std::string scores_to_jsonl(const std::vector<ScoreSet>& sets);

/// Reads a score file and checks it against the dataset. Throws SchemaError
/// for unknown questions, out-of-table coordinates, duplicates or scores
/// outside (0,1), and IncompleteScores when a question's candidates are not
/// all covered. Questions absent from the file are simply absent from the map.
std::map<std::string, ScoreSet, std::less<>> import_scores(const std::filesystem::path& path,
                                                           const Dataset& ds);

/// Scores that reproduce the distant labels inside the open interval:
/// positives 0.75, negatives 0.25.
ScoreSet oracle_scores(const LabelSet& labels);

}  // namespace hqa
