#pragma once

#include "hqa/esel.hpp"
#include "hqa/labels.hpp"
#include "hqa/reader.hpp"
#include "hqa/scorer.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

/// 1 iff the normalized prediction equals some normalized gold answer.
int exact_match(std::string_view pred, std::span<const std::string> golds);

/// Best token-multiset F1 against any gold. Empty against empty scores 1.
double token_f1(std::string_view pred, std::span<const std::string> golds);

/// Highest-scoring candidate of a granularity; ties go to the lowest
/// coordinates. Empty when the question has no such candidate.
std::optional<EvidenceId> top_candidate(const ScoreSet& scores, Granularity g);

/// 1 iff the top-1 candidate of `g` is labeled positive.
int recall_at_1(const ScoreSet& scores, const LabelSet& labels, Granularity g);

/// 1 iff the navigated cell (In-Table) or link (In-Passage) is labeled positive.
int multi_r_at_1(const Navigation& nav, const LabelSet& labels);

struct SplitMetrics {
  double em = 0.0;
  double f1 = 0.0;
  std::size_t n = 0;

  bool operator==(const SplitMetrics&) const = default;
};

/// R@1 keys: "col", "row", "cell", "link", "multi".
struct MetricsReport {
  SplitMetrics in_table;
  SplitMetrics in_passage;
  SplitMetrics total;
  std::size_t n_unanswerable = 0;
  std::map<std::string, double> r_at_1;

  bool operator==(const MetricsReport&) const = default;
};

/// Hit of the evidence a prediction handed downstream, for the "multi" R@1 slot.
using HandedEvidenceHit =
    std::function<int(const Prediction&, const LabelSet&, const ScoreSet&)>;

/// Scores every dataset question.
///
/// Questions are split by their declared answer type, falling back to the
/// type derived from labels; questions with neither are counted as
/// unanswerable and left out of EM/F1 and R@1. A granularity's R@1 is
/// averaged over questions that have at least one positive of that
/// granularity. Total EM/F1 is the count-weighted mean of the two splits.
///
/// Throws MissingPrediction when a question has no prediction and
/// UnknownQuestion for predictions outside the dataset.
MetricsReport evaluate(const std::vector<Prediction>& predictions, const Dataset& ds,
                       const std::vector<LabelSet>& labels, const std::vector<ScoreSet>& scores);

MetricsReport evaluate(const std::vector<Prediction>& predictions, const Dataset& ds,
                       const std::vector<LabelSet>& labels, const std::vector<ScoreSet>& scores,
                       const HandedEvidenceHit& handed);

/// Single JSON object, fixed key order, reals with six decimals.
std::string metrics_to_json(const MetricsReport& report);

}  // namespace hqa
