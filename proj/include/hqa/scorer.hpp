#pragma once

#include "hqa/features.hpp"
#include "hqa/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hqa {

/// Linear projection W (no bias) followed by a sigmoid.
struct LinearScorer {
  FeaturizerConfig featurizer;
  std::vector<double> weights;
  std::uint64_t seed = 0;

  static LinearScorer zeros(FeaturizerConfig cfg, std::uint64_t seed = 0);
  std::size_t dimension() const noexcept { return weights.size(); }

  bool operator==(const LinearScorer&) const = default;
};

/// Retrieval scores of every candidate of one question, each in (0, 1).
struct ScoreSet {
  std::string question_id;
  std::map<EvidenceId, double> scores;

  /// Throws IncompleteScores when the candidate has no score.
  double at(const EvidenceId& id) const;

  bool operator==(const ScoreSet&) const = default;
};

/// Throws IncompleteScores naming the first enumerated candidate without a score.
void require_complete(const ScoreSet& scores, const HybridTable& table);

/// Logistic function, clamped so the result stays inside the open unit interval.
double sigmoid(double x);

double dot(std::span<const double> a, std::span<const double> b);

/// sigmoid(h . W). Throws DimensionMismatch.
double score_candidate(const LinearScorer& scorer, std::span<const double> h);

/// Row score: the maximum of its cell scores. Throws EmptyRow.
double score_row(std::span<const double> cell_scores);

ScoreSet score_all(const LinearScorer& scorer, const Question& question, const HybridTable& table,
                   const PassageMap& passages);

std::vector<ScoreSet> score_dataset(const LinearScorer& scorer, const Dataset& ds);

/// Model file: {"dimension", "weights", "featurizer", "seed"}.
std::string model_to_json(const LinearScorer& scorer);
LinearScorer load_model(const std::filesystem::path& path);

}  // namespace hqa
