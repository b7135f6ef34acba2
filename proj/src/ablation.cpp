#include "hqa/ablation.hpp"

#include "hqa/errors.hpp"
#include "hqa/esel.hpp"
#include "hqa/evidence.hpp"

#include <fmt/format.h>

namespace hqa {
namespace {

Granularity granularity_of(Mode m) {
  switch (m) {
    case Mode::Col: return Granularity::Col;
    case Mode::Row: return Granularity::Row;
    case Mode::Cell: return Granularity::Cell;
    case Mode::Link: return Granularity::Link;
    case Mode::Multi: break;
  }
  throw Error("multi mode has no single granularity");
}

std::string join_sep(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) fmt::format_to(std::back_inserter(out), " {} ", kSepMarker);
    out += parts[k];
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Col: return "col";
    case Mode::Row: return "row";
    case Mode::Cell: return "cell";
    case Mode::Link: return "link";
    case Mode::Multi: return "multi";
  }
  return "?";
}

Mode mode_from_string(std::string_view s) {
  for (auto m : kAllModes) {
    if (to_string(m) == s) return m;
  }
  throw UsageError(fmt::format("unknown mode '{}'", s));
}

std::string truncate_utf8(std::string s, std::size_t max_bytes) {
  if (s.size() <= max_bytes) return s;
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  s.resize(cut);
  return s;
}

std::string flatten_column(const HybridTable& table, const PassageMap& passages, std::size_t j) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < table.num_rows(); ++i) parts.push_back(cell_content(table, passages, i, j));
  return truncate_utf8(join_sep(parts), kMaxFlattenedBytes);
}

std::string flatten_row(const HybridTable& table, const PassageMap& passages, std::size_t i) {
  std::vector<std::string> parts;
  for (std::size_t j = 0; j < table.num_cols(); ++j) parts.push_back(cell_content(table, passages, i, j));
  return truncate_utf8(join_sep(parts), kMaxFlattenedBytes);
}

Prediction predict_with_mode(Mode mode, const Question& question, const HybridTable& table,
                             const PassageMap& passages, const ScoreSet& scores,
                             const SpanReader& reader) {
  if (mode == Mode::Multi) return answer_question(question, table, passages, scores, reader);

  require_complete(scores, table);
  Prediction p;
  p.question_id = question.id;
  p.reader_name = reader.name();
  const auto top = top_candidate(scores, granularity_of(mode));
  if (!top) {
    // Only links can be missing entirely; fall back to an abstention.
    p.answer_type = AnswerType::InTable;
    p.navigation.answer_type = AnswerType::InTable;
    return p;
  }
  const double s = scores.at(*top);
  switch (mode) {
    case Mode::Col:
      p.navigation.cell = {0, top->col};
      p.answer = reader.read(question, flatten_column(table, passages, top->col));
      break;
    case Mode::Row:
      p.navigation.cell = {top->row, 0};
      p.answer = reader.read(question, flatten_row(table, passages, top->row));
      break;
    case Mode::Cell:
      p.navigation.cell = {top->row, top->col};
      p.answer = table.at(top->row, top->col).value;
      break;
    case Mode::Link: {
      p.answer_type = AnswerType::InPassage;
      p.navigation.cell = {top->row, top->col};
      p.navigation.link_index = top->link;
      p.navigation.s_pass = s;
      const auto& pid = table.at(top->row, top->col).link_ids.at(top->link);
      p.answer = reader.read(question, passages.at(pid).text);
      break;
    }
    case Mode::Multi: break;
  }
  p.navigation.answer_type = p.answer_type;
  if (p.answer_type == AnswerType::InTable) p.navigation.s_tab = s;
  return p;
}

std::map<Mode, MetricsReport> ablate(const Dataset& ds, const std::vector<LabelSet>& labels,
                                     const std::vector<ScoreSet>& scores, const SpanReader& reader,
                                     const std::vector<Mode>& modes) {
  std::map<std::string, const ScoreSet*, std::less<>> score_of;
  for (const auto& s : scores) score_of.emplace(s.question_id, &s);

  std::map<Mode, MetricsReport> out;
  for (auto mode : modes) {
    if (out.contains(mode)) continue;
    std::vector<Prediction> preds;
    preds.reserve(ds.questions.size());
    for (const auto& q : ds.questions) {
      auto it = score_of.find(q.id);
      if (it == score_of.end()) throw IncompleteScores(q.id, "<all>");
      preds.push_back(predict_with_mode(mode, q, ds.table_for(q), ds.passages, *it->second, reader));
    }
    if (mode == Mode::Multi) {
      out[mode] = evaluate(preds, ds, labels, scores);
    } else {
      const Granularity g = granularity_of(mode);
      out[mode] = evaluate(preds, ds, labels, scores,
                           [g](const Prediction&, const LabelSet& l, const ScoreSet& s) {
                             return recall_at_1(s, l, g);
                           });
    }
  }
  return out;
}

std::map<Mode, MetricsReport> ablate(const Dataset& ds, const std::vector<LabelSet>& labels,
                                     const LinearScorer& scorer, const SpanReader& reader,
                                     const std::vector<Mode>& modes) {
  return ablate(ds, labels, score_dataset(scorer, ds), reader, modes);
}

}  // namespace hqa
