#include "hqa/scorer.hpp"

#include "hqa/errors.hpp"
#include "hqa/evidence.hpp"
#include "hqa/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hqa {

LinearScorer LinearScorer::zeros(FeaturizerConfig cfg, std::uint64_t seed) {
  LinearScorer s;
  s.weights.assign(cfg.dimension(), 0.0);
  s.featurizer = std::move(cfg);
  s.seed = seed;
  return s;
}

double ScoreSet::at(const EvidenceId& id) const {
  auto it = scores.find(id);
  if (it == scores.end()) throw IncompleteScores(question_id, id.to_string());
  return it->second;
}

void require_complete(const ScoreSet& scores, const HybridTable& table) {
  for (const auto& id : enumerate_candidates(table)) {
    if (!scores.scores.contains(id)) throw IncompleteScores(scores.question_id, id.to_string());
  }
}

double sigmoid(double x) {
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  const double hi = std::nextafter(1.0, 0.0);
  double s;
  if (x >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-x));
  } else {
    const double e = std::exp(x);
    s = e / (1.0 + e);
  }
  return std::clamp(s, lo, hi);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double score_candidate(const LinearScorer& scorer, std::span<const double> h) {
  if (h.size() != scorer.dimension()) throw DimensionMismatch(scorer.dimension(), h.size());
  return sigmoid(dot(h, scorer.weights));
}

double score_row(std::span<const double> cell_scores) {
  if (cell_scores.empty()) throw EmptyRow();
  return *std::max_element(cell_scores.begin(), cell_scores.end());
}

ScoreSet score_all(const LinearScorer& scorer, const Question& question, const HybridTable& table,
                   const PassageMap& passages) {
  ScoreSet out;
  out.question_id = question.id;
  for (const auto& cf : featurize_question(scorer.featurizer, question, table, passages)) {
    std::vector<double> member;
    member.reserve(cf.views.size());
    for (const auto& h : cf.views) member.push_back(score_candidate(scorer, h));
    out.scores.emplace(cf.id, cf.id.granularity == Granularity::Row ? score_row(member) : member[0]);
  }
  return out;
}

std::vector<ScoreSet> score_dataset(const LinearScorer& scorer, const Dataset& ds) {
  std::vector<ScoreSet> out;
  out.reserve(ds.questions.size());
  for (const auto& q : ds.questions) out.push_back(score_all(scorer, q, ds.table_for(q), ds.passages));
  return out;
}

std::string model_to_json(const LinearScorer& scorer) {
  nlohmann::ordered_json j{{"dimension", scorer.dimension()},
                           {"weights", scorer.weights},
                           {"featurizer", featurizer_to_json(scorer.featurizer)},
                           {"seed", scorer.seed}};
  return j.dump(2) + "\n";
}

LinearScorer load_model(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    LinearScorer s;
    s.featurizer = featurizer_from_json(j.at("featurizer"));
    s.weights = j.at("weights").get<std::vector<double>>();
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto dim = j.at("dimension").get<std::size_t>();
    if (dim != s.weights.size()) throw DimensionMismatch(dim, s.weights.size());
    if (dim != s.featurizer.dimension()) throw DimensionMismatch(s.featurizer.dimension(), dim);
    for (double w : s.weights) {
      if (!std::isfinite(w)) throw SchemaError(path.string(), "non-finite weight");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string(), e.what());
  }
}

}  // namespace hqa
