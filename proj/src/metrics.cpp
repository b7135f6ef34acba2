#include "hqa/metrics.hpp"

#include "hqa/errors.hpp"
#include "hqa/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace hqa {
namespace {

template <typename T>
std::map<std::string, const T*, std::less<>> index_by_question(const std::vector<T>& items) {
  std::map<std::string, const T*, std::less<>> out;
  for (const auto& item : items) out.emplace(item.question_id, &item);
  return out;
}

double rate(double sum, std::size_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); }

}  // namespace

int exact_match(std::string_view pred, std::span<const std::string> golds) {
  const auto p = normalize_text(pred);
  return std::any_of(golds.begin(), golds.end(),
                     [&](const std::string& g) { return normalize_text(g) == p; })
             ? 1
             : 0;
}

double token_f1(std::string_view pred, std::span<const std::string> golds) {
  auto p = normalized_tokens(pred);
  std::sort(p.begin(), p.end());
  double best = 0.0;
  for (const auto& gold : golds) {
    auto g = normalized_tokens(gold);
    std::sort(g.begin(), g.end());
    double f1;
    if (p.empty() || g.empty()) {
      f1 = p.empty() && g.empty() ? 1.0 : 0.0;
    } else {
      std::vector<std::string> common;
      std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(common));
      if (common.empty()) {
        f1 = 0.0;
      } else {
        const double precision = static_cast<double>(common.size()) / static_cast<double>(p.size());
        const double recall = static_cast<double>(common.size()) / static_cast<double>(g.size());
        f1 = 2.0 * precision * recall / (precision + recall);
      }
    }
    best = std::max(best, f1);
  }
  return best;
}

std::optional<EvidenceId> top_candidate(const ScoreSet& scores, Granularity g) {
  std::optional<EvidenceId> best;
  double best_score = 0.0;
  for (const auto& [id, s] : scores.scores) {
    if (id.granularity != g) continue;
    if (!best || s > best_score) {
      best = id;
      best_score = s;
    }
  }
  return best;
}

int recall_at_1(const ScoreSet& scores, const LabelSet& labels, Granularity g) {
  const auto top = top_candidate(scores, g);
  return top ? labels.at(*top) : 0;
}

int multi_r_at_1(const Navigation& nav, const LabelSet& labels) {
  if (nav.answer_type == AnswerType::InTable) {
    return labels.at(EvidenceId::cell(nav.cell.row, nav.cell.col));
  }
  return labels.at(EvidenceId::link_of(nav.cell.row, nav.cell.col, nav.link_index.value()));
}

MetricsReport evaluate(const std::vector<Prediction>& predictions, const Dataset& ds,
                       const std::vector<LabelSet>& labels, const std::vector<ScoreSet>& scores) {
  return evaluate(predictions, ds, labels, scores,
                  [](const Prediction& p, const LabelSet& l, const ScoreSet&) {
                    return multi_r_at_1(p.navigation, l);
                  });
}

MetricsReport evaluate(const std::vector<Prediction>& predictions, const Dataset& ds,
                       const std::vector<LabelSet>& labels, const std::vector<ScoreSet>& scores,
                       const HandedEvidenceHit& handed) {
  const auto preds = index_by_question(predictions);
  const auto label_of = index_by_question(labels);
  const auto score_of = index_by_question(scores);
  std::set<std::string_view> known;
  for (const auto& q : ds.questions) known.insert(q.id);
  for (const auto& p : predictions) {
    if (!known.contains(p.question_id)) throw UnknownQuestion(p.question_id);
  }

  struct Sums {
    double em = 0.0;
    double f1 = 0.0;
    std::size_t n = 0;
  } table_sums, passage_sums;
  std::map<Granularity, std::pair<double, std::size_t>> gran;
  double multi_hits = 0.0;
  std::size_t multi_n = 0;

  MetricsReport report;
  for (const auto& q : ds.questions) {
    auto pit = preds.find(q.id);
    if (pit == preds.end()) throw MissingPrediction(q.id);
    auto lit = label_of.find(q.id);
    if (lit == label_of.end()) throw SchemaError(q.id, "question has no labels");
    auto sit = score_of.find(q.id);
    if (sit == score_of.end()) throw IncompleteScores(q.id, "<all>");
    const Prediction& pred = *pit->second;
    const LabelSet& lab = *lit->second;
    const ScoreSet& sc = *sit->second;

    const GoldType derived = derive_gold_type(lab);
    GoldType split = derived;
    if (q.gold_type) {
      split = *q.gold_type == AnswerType::InTable ? GoldType::InTable : GoldType::InPassage;
    }
    if (split == GoldType::Unanswerable) {
      ++report.n_unanswerable;
    } else {
      Sums& s = split == GoldType::InTable ? table_sums : passage_sums;
      s.em += exact_match(pred.answer, q.gold_answers);
      s.f1 += token_f1(pred.answer, q.gold_answers);
      ++s.n;
    }

    if (derived == GoldType::Unanswerable) continue;
    for (auto g : kAllGranularities) {
      if (!lab.any_positive(g)) continue;
      auto& [hits, n] = gran[g];
      hits += recall_at_1(sc, lab, g);
      ++n;
    }
    multi_hits += handed(pred, lab, sc);
    ++multi_n;
  }

  report.in_table = {rate(table_sums.em, table_sums.n), rate(table_sums.f1, table_sums.n),
                     table_sums.n};
  report.in_passage = {rate(passage_sums.em, passage_sums.n),
                       rate(passage_sums.f1, passage_sums.n), passage_sums.n};
  const std::size_t n = table_sums.n + passage_sums.n;
  const double nt = static_cast<double>(report.in_table.n);
  const double np = static_cast<double>(report.in_passage.n);
  report.total.n = n;
  if (n > 0) {
    report.total.em = (nt * report.in_table.em + np * report.in_passage.em) / static_cast<double>(n);
    report.total.f1 = (nt * report.in_table.f1 + np * report.in_passage.f1) / static_cast<double>(n);
  }
  for (auto g : kAllGranularities) {
    const auto [hits, cnt] = gran[g];
    report.r_at_1[std::string(to_string(g))] = rate(hits, cnt);
  }
  report.r_at_1["multi"] = rate(multi_hits, multi_n);
  return report;
}

std::string metrics_to_json(const MetricsReport& r) {
  auto split = [](const SplitMetrics& s) {
    return fmt::format("{{\"em\": {:.6f}, \"f1\": {:.6f}, \"n\": {}}}", s.em, s.f1, s.n);
  };
  std::string out = "{\n";
  out += fmt::format("  \"in_table\": {},\n", split(r.in_table));
  out += fmt::format("  \"in_passage\": {},\n", split(r.in_passage));
  out += fmt::format("  \"total\": {},\n", split(r.total));
  out += fmt::format("  \"unanswerable\": {},\n", r.n_unanswerable);
  out += "  \"r_at_1\": {";
  const char* keys[] = {"col", "row", "cell", "link", "multi"};
  for (std::size_t k = 0; k < 5; ++k) {
    auto it = r.r_at_1.find(keys[k]);
    out += fmt::format("{}\"{}\": {:.6f}", k ? ", " : "", keys[k],
                       it == r.r_at_1.end() ? 0.0 : it->second);
  }
  out += "}\n}\n";
  return out;
}

}  // namespace hqa
