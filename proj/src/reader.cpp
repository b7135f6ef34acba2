#include "hqa/reader.hpp"

#include "hqa/errors.hpp"
#include "hqa/io.hpp"
#include "hqa/text.hpp"

#include <set>

namespace hqa {

std::string extract_span(const Question& question, std::string_view passage,
                         std::size_t max_span_tokens) {
  const auto raw = whitespace_tokens(passage);
  if (raw.empty() || max_span_tokens == 0) return {};

  const auto qtoks = normalized_tokens(question.text);
  const std::set<std::string, std::less<>> qset(qtoks.begin(), qtoks.end());
  std::vector<int> hit(raw.size(), 0);
  for (std::size_t t = 0; t < raw.size(); ++t) {
    const auto norm = normalized_tokens(passage.substr(raw[t].begin, raw[t].end - raw[t].begin));
    for (const auto& n : norm) {
      if (qset.contains(n)) {
        hit[t] = 1;
        break;
      }
    }
  }
  // prefix[t] = hits in [0, t)
  std::vector<long> prefix(raw.size() + 1, 0);
  for (std::size_t t = 0; t < raw.size(); ++t) prefix[t + 1] = prefix[t] + hit[t];
  auto hits = [&](std::size_t lo, std::size_t hi) { return prefix[hi] - prefix[lo]; };

  const std::size_t k = max_span_tokens;
  long best_score = 0;
  std::size_t best_s = 0;
  std::size_t best_e = 0;
  for (std::size_t s = 0; s < raw.size(); ++s) {
    for (std::size_t len = 1; len <= k && s + len <= raw.size(); ++len) {
      const std::size_t e = s + len;
      const std::size_t left = s >= k ? s - k : 0;
      const std::size_t right = std::min(raw.size(), e + k);
      // Scaled by 100 so the 0.01 length penalty stays integral.
      const long score = 100 * (hits(left, s) + hits(e, right)) - static_cast<long>(len);
      if (best_e == 0 || score > best_score) {
        best_score = score;
        best_s = s;
        best_e = e;
      }
    }
  }
  return std::string(passage.substr(raw[best_s].begin, raw[best_e - 1].end - raw[best_s].begin));
}

ProximityReader::ProximityReader(std::size_t max_span_tokens) : max_span_tokens_(max_span_tokens) {
  if (max_span_tokens_ == 0) throw UsageError("max_span_tokens must be positive");
}

std::string ProximityReader::read(const Question& question, std::string_view passage) const {
  return extract_span(question, passage, max_span_tokens_);
}

Prediction answer_question(const Question& question, const HybridTable& table,
                           const PassageMap& passages, const ScoreSet& scores,
                           const SpanReader& reader) {
  Prediction p;
  p.question_id = question.id;
  p.navigation = navigate(scores, table);
  p.answer_type = p.navigation.answer_type;
  p.reader_name = reader.name();
  const Cell& cell = table.at(p.navigation.cell.row, p.navigation.cell.col);
  if (p.answer_type == AnswerType::InTable) {
    p.answer = cell.value;
  } else {
    const auto& passage = passages.at(cell.link_ids.at(*p.navigation.link_index));
    p.answer = reader.read(question, passage.text);
  }
  return p;
}

std::string predictions_to_jsonl(const std::vector<Prediction>& predictions) {
  using oj = nlohmann::ordered_json;
  std::string out;
  for (const auto& p : predictions) {
    oj link = p.navigation.link_index ? oj(*p.navigation.link_index) : oj(nullptr);
    oj line{{"question_id", p.question_id},
            {"answer", p.answer},
            {"answer_type", to_string(p.answer_type)},
            {"cell", {p.navigation.cell.row, p.navigation.cell.col}},
            {"link_index", std::move(link)},
            {"reader_name", p.reader_name}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<Prediction> import_predictions(const std::filesystem::path& path, const Dataset& ds) {
  std::set<std::string, std::less<>> known;
  for (const auto& q : ds.questions) known.insert(q.id);

  std::vector<Prediction> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& obj : read_json_lines(path)) {
    Prediction p;
    try {
      p.question_id = obj.at("question_id").get<std::string>();
      p.answer = obj.at("answer").get<std::string>();
      p.answer_type = answer_type_from_string(obj.at("answer_type").get<std::string>());
      const auto cell = obj.at("cell").get<std::vector<std::size_t>>();
      if (cell.size() != 2) throw SchemaError(p.question_id, "cell must be [i, j]");
      p.navigation.cell = {cell[0], cell[1]};
      if (const auto& li = obj.at("link_index"); !li.is_null()) {
        p.navigation.link_index = li.get<std::size_t>();
      }
      p.reader_name = obj.at("reader_name").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(p.question_id.empty() ? path.string() : p.question_id, e.what());
    }
    p.navigation.answer_type = p.answer_type;
    if (p.navigation.link_index.has_value() != (p.answer_type == AnswerType::InPassage)) {
      throw SchemaError(p.question_id, "link_index must be set exactly for in_passage answers");
    }
    if (!known.contains(p.question_id)) throw UnknownQuestion(p.question_id);
    if (!seen.insert(p.question_id).second) {
      throw SchemaError(p.question_id, "duplicate prediction");
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hqa
