#include "hqa/labels.hpp"

#include "hqa/errors.hpp"
#include "hqa/evidence.hpp"
#include "hqa/io.hpp"
#include "hqa/text.hpp"

#include <algorithm>

namespace hqa {

int LabelSet::at(const EvidenceId& id) const {
  auto it = labels.find(id);
  if (it == labels.end()) throw SchemaError(question_id, "no label for " + id.to_string());
  return it->second;
}

bool LabelSet::any_positive(Granularity g) const {
  return std::any_of(labels.begin(), labels.end(), [g](const auto& kv) {
    return kv.first.granularity == g && kv.second == 1;
  });
}

LabelSet label_candidates(const Question& question, const HybridTable& table,
                          const PassageMap& passages) {
  const std::size_t m = table.num_rows();
  const std::size_t n = table.num_cols();
  const std::span<const std::string> answers = question.gold_answers;

  std::vector<std::vector<int>> value_hit(m, std::vector<int>(n, 0));
  std::vector<std::vector<std::vector<int>>> link_hit(m, std::vector<std::vector<int>>(n));
  std::vector<int> row_hit(m, 0);
  std::vector<int> col_hit(n, 0);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Cell& cell = table.at(i, j);
      value_hit[i][j] = contains_answer(cell.value, answers) ? 1 : 0;
      int any = value_hit[i][j];
      for (const auto& pid : cell.link_ids) {
        const int hit = contains_answer(passages.at(pid).text, answers) ? 1 : 0;
        link_hit[i][j].push_back(hit);
        any |= hit;
      }
      row_hit[i] |= any;
      col_hit[j] |= any;
    }
  }

  LabelSet out;
  out.question_id = question.id;
  for (const auto& id : enumerate_candidates(table)) {
    int y = 0;
    switch (id.granularity) {
      case Granularity::Col: y = col_hit[id.col]; break;
      case Granularity::Row: y = row_hit[id.row]; break;
      case Granularity::Cell: y = value_hit[id.row][id.col]; break;
      case Granularity::Link: y = link_hit[id.row][id.col][id.link]; break;
    }
    out.labels.emplace(id, y);
  }
  return out;
}

GoldType derive_gold_type(const LabelSet& labels) {
  if (labels.any_positive(Granularity::Cell)) return GoldType::InTable;
  if (labels.any_positive(Granularity::Link)) return GoldType::InPassage;
  return GoldType::Unanswerable;
}

std::vector<LabelSet> label_dataset(const Dataset& ds) {
  std::vector<LabelSet> out;
  out.reserve(ds.questions.size());
  for (const auto& q : ds.questions) {
    out.push_back(label_candidates(q, ds.table_for(q), ds.passages));
  }
  return out;
}

std::string labels_to_jsonl(const std::vector<LabelSet>& sets) {
  using oj = nlohmann::ordered_json;
  std::string out;
  for (const auto& s : sets) {
    oj arr = oj::array();
    for (const auto& [id, y] : s.labels) {
      arr.push_back(oj{{"granularity", to_string(id.granularity)}, {"coords", id.coords()}, {"y", y}});
    }
    out += oj{{"question_id", s.question_id}, {"labels", std::move(arr)}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabelSet> read_labels(const std::filesystem::path& path) {
  std::vector<LabelSet> out;
  for (const auto& obj : read_json_lines(path)) {
    try {
      LabelSet s;
      s.question_id = obj.at("question_id").get<std::string>();
      for (const auto& e : obj.at("labels")) {
        const auto g = granularity_from_string(e.at("granularity").get<std::string>());
        const auto id = EvidenceId::from_coords(g, e.at("coords").get<std::vector<std::size_t>>());
        const int y = e.at("y").get<int>();
        if (y != 0 && y != 1) throw SchemaError(s.question_id, "label must be 0 or 1");
        if (!s.labels.emplace(id, y).second) {
          throw SchemaError(s.question_id, "duplicate label for " + id.to_string());
        }
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path.string(), e.what());
    }
  }
  return out;
}

}  // namespace hqa
