#include "hqa/score_io.hpp"

#include "hqa/errors.hpp"
#include "hqa/io.hpp"

namespace hqa {

std::string scores_to_jsonl(const std::vector<ScoreSet>& sets) {
  std::string out;
  for (const auto& s : sets) {
    for (const auto& [id, score] : s.scores) {
      nlohmann::ordered_json line{{"question_id", s.question_id},
                                  {"granularity", to_string(id.granularity)},
                                  {"coords", id.coords()},
                                  {"score", score}};
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

std::map<std::string, ScoreSet, std::less<>> import_scores(const std::filesystem::path& path,
                                                           const Dataset& ds) {
  std::map<std::string, const Question*, std::less<>> questions;
  for (const auto& q : ds.questions) questions.emplace(q.id, &q);

  std::map<std::string, ScoreSet, std::less<>> out;
  for (const auto& obj : read_json_lines(path)) {
    std::string qid;
    try {
      qid = obj.at("question_id").get<std::string>();
      auto qit = questions.find(qid);
      if (qit == questions.end()) throw SchemaError(qid, "score for unknown question");
      const auto g = granularity_from_string(obj.at("granularity").get<std::string>());
      const auto id = EvidenceId::from_coords(g, obj.at("coords").get<std::vector<std::size_t>>());
      if (!ds.table_for(*qit->second).contains(id)) {
        throw SchemaError(qid, "score for out-of-table candidate " + id.to_string());
      }
      const double score = obj.at("score").get<double>();
      if (!(score > 0.0 && score < 1.0)) {
        throw SchemaError(qid, "score outside (0,1) for " + id.to_string());
      }
      auto& set = out[qid];
      set.question_id = qid;
      if (!set.scores.emplace(id, score).second) {
        throw SchemaError(qid, "duplicate score for " + id.to_string());
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(qid.empty() ? path.string() : qid, e.what());
    }
  }
  for (const auto& [qid, set] : out) {
    require_complete(set, ds.table_for(*questions.at(qid)));
  }
  return out;
}

ScoreSet oracle_scores(const LabelSet& labels) {
  ScoreSet s;
  s.question_id = labels.question_id;
  for (const auto& [id, y] : labels.labels) s.scores.emplace(id, y == 1 ? 0.75 : 0.25);
  return s;
}

}  // namespace hqa
