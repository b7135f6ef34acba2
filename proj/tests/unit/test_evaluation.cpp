#include "fixtures.hpp"
#include "oracles.hpp"

#include "hqa/ablation.hpp"
#include "hqa/errors.hpp"
#include "hqa/labels.hpp"
#include "hqa/metrics.hpp"
#include "hqa/synth.hpp"

#include <doctest.h>

#include <map>

using namespace hqa;

namespace {

double f1_oracle(const std::string& pred, const std::vector<std::string>& golds) {
  double best = 0.0;
  const auto p = oracle::tokens(pred);
  for (const auto& g : golds) {
    const auto t = oracle::tokens(g);
    if (p.empty() && t.empty()) return 1.0;
    std::map<std::string, int> count;
    for (const auto& w : t) ++count[w];
    int common = 0;
    for (const auto& w : p)
      if (count[w]-- > 0) ++common;
    if (common == 0) continue;
    const double prec = static_cast<double>(common) / p.size();
    const double rec = static_cast<double>(common) / t.size();
    best = std::max(best, 2 * prec * rec / (prec + rec));
  }
  return best;
}

ScoreSet from_labels(const LabelSet& l) {
  ScoreSet s;
  s.question_id = l.question_id;
  for (const auto& [id, y] : l.labels) s.scores[id] = y;
  return s;
}

std::vector<ScoreSet> label_scores(const std::vector<LabelSet>& labels) {
  std::vector<ScoreSet> out;
  for (const auto& l : labels) out.push_back(from_labels(l));
  return out;
}

std::vector<Prediction> predict_all(const Dataset& ds, const std::vector<ScoreSet>& scores) {
  std::vector<Prediction> out;
  for (std::size_t k = 0; k < ds.questions.size(); ++k) {
    const auto& q = ds.questions[k];
    out.push_back(answer_question(q, ds.table_for(q), ds.passages, scores[k], ProximityReader()));
  }
  return out;
}

}  // namespace

TEST_CASE("exact match and token F1") {
  using V = std::vector<std::string>;
  CHECK(exact_match("The Beatles", V{"beatles"}) == 1);
  CHECK(exact_match("Beatles!", V{"Rolling Stones", "the beatles"}) == 1);
  CHECK(exact_match("Beatle", V{"beatles"}) == 0);
  CHECK(token_f1("Mississippi River", V{"the Mississippi"}) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(token_f1("", V{"x"}) == 0.0);
  CHECK(token_f1("", V{"the"}) == 1.0);
  CHECK(token_f1("x b b", V{"b b c"}) == doctest::Approx(2.0 / 3.0));
  CHECK(token_f1("x", V{"y", "x z"}) == doctest::Approx(2.0 / 3.0));

  const std::vector<std::string> words = {"Red", "red.", "the", "sea", "Sea", "blue", "(x)", "a"};
  Rng rng(19);
  auto phrase = [&] {
    std::string s;
    for (std::size_t n = rng.below(4); n > 0; --n) s += words[rng.below(words.size())] + " ";
    return s;
  };
  for (int k = 0; k < 1000; ++k) {
    const std::string p = phrase(), g = phrase();
    const double f = token_f1(p, V{g});
    CHECK(f == doctest::Approx(f1_oracle(p, {g})).epsilon(1e-12));
    CHECK(f == doctest::Approx(token_f1(g, V{p})).epsilon(1e-12));
    if (exact_match(p, V{g})) CHECK(f == 1.0);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("top candidate and recall at 1") {
  ScoreSet s{"q", {{EvidenceId::column(0), 0.4}, {EvidenceId::column(1), 0.4},
                   {EvidenceId::table_row(0), 0.1}, {EvidenceId::table_row(1), 0.8}}};
  CHECK(top_candidate(s, Granularity::Col) == EvidenceId::column(0));
  CHECK(top_candidate(s, Granularity::Row) == EvidenceId::table_row(1));
  CHECK_FALSE(top_candidate(s, Granularity::Link).has_value());

  LabelSet l{"q", {{EvidenceId::column(0), 0}, {EvidenceId::column(1), 1},
                   {EvidenceId::table_row(0), 0}, {EvidenceId::table_row(1), 1}}};
  CHECK(recall_at_1(s, l, Granularity::Col) == 0);
  CHECK(recall_at_1(s, l, Granularity::Row) == 1);
  CHECK(recall_at_1(s, l, Granularity::Link) == 0);

  Navigation nav;
  nav.answer_type = AnswerType::InPassage;
  nav.cell = {0, 0};
  nav.link_index = 0;
  LabelSet with_link{"q", {{EvidenceId::cell(0, 0), 0}, {EvidenceId::link_of(0, 0, 0), 1}}};
  CHECK(multi_r_at_1(nav, with_link) == 1);
  nav.answer_type = AnswerType::InTable;
  nav.link_index.reset();
  CHECK(multi_r_at_1(nav, with_link) == 0);
}

TEST_CASE("evaluation report") {
  const auto ds = fixture::rivers();
  const auto labels = label_dataset(ds);
  const auto scores = label_scores(labels);
  auto preds = predict_all(ds, scores);

  const auto r = evaluate(preds, ds, labels, scores);
  CHECK(r.in_table.n == 1);
  CHECK(r.in_passage.n == 1);
  CHECK(r.n_unanswerable == 1);
  CHECK(r.in_table.em == 1.0);
  CHECK(r.r_at_1.at("multi") == 1.0);
  CHECK(r.total.n == 2);
  CHECK(r.total.em == (r.in_table.em + r.in_passage.em) / 2);
  CHECK(r.total.f1 == (r.in_table.f1 + r.in_passage.f1) / 2);
  CHECK(evaluate(preds, ds, labels, scores) == r);

  // Hand-set answers: one exact, one partial.
  preds[0].answer = "6400 km";
  preds[1].answer = "Mexico gulf coast";
  const auto h = evaluate(preds, ds, labels, scores);
  CHECK(h.in_table.em == 1.0);
  CHECK(h.in_passage.em == 0.0);
  CHECK(h.in_passage.f1 == doctest::Approx(f1_oracle("Mexico gulf coast", {"Gulf of Mexico"})));
  CHECK(h.total.f1 == doctest::Approx((1.0 + h.in_passage.f1) / 2).epsilon(1e-15));

  auto fewer = preds;
  fewer.pop_back();
  CHECK_THROWS_AS(evaluate(fewer, ds, labels, scores), MissingPrediction);
  auto extra = preds;
  extra.push_back(preds[0]);
  extra.back().question_id = "q9";
  CHECK_THROWS_AS(evaluate(extra, ds, labels, scores), UnknownQuestion);

  const auto json = nlohmann::json::parse(metrics_to_json(r));
  CHECK(json.at("unanswerable") == 1);
  CHECK(json.at("in_table").at("n") == 1);
  CHECK(json.at("r_at_1").size() == 5);
}

TEST_CASE("total is the count-weighted mean of the splits") {
  SynthSpec spec;
  spec.n_questions = 60;
  spec.in_table_fraction = 0.3;
  spec.seed = 5;
  const auto ds = generate_synthetic(spec);
  const auto labels = label_dataset(ds);
  auto scores = label_scores(labels);
  Rng rng(2);
  for (auto& s : scores)
    for (auto& [id, v] : s.scores) v = rng.uniform();
  const auto r = evaluate(predict_all(ds, scores), ds, labels, scores);
  CHECK(r.in_table.n == 18);
  CHECK(r.in_passage.n == 42);
  const double nt = 18, np = 42;
  CHECK(r.total.em == (nt * r.in_table.em + np * r.in_passage.em) / 60);
  CHECK(r.total.f1 == (nt * r.in_table.f1 + np * r.in_passage.f1) / 60);
}

TEST_CASE("ablation modes") {
  CHECK(mode_from_string("cell") == Mode::Cell);
  CHECK(to_string(Mode::Multi) == "multi");
  CHECK_THROWS_AS(mode_from_string("table"), UsageError);
  CHECK(truncate_utf8("h\xc3\xa9llo", 2) == "h");
  CHECK(truncate_utf8("h\xc3\xa9llo", 3) == "h\xc3\xa9");
  CHECK(truncate_utf8("abc", 10) == "abc");

  const auto rivers = fixture::rivers();
  const auto& t = rivers.tables.at("t1");
  CHECK(flatten_column(t, rivers.passages, 2) ==
        cell_content(t, rivers.passages, 0, 2) + " [SEP] " + cell_content(t, rivers.passages, 1, 2) +
            " [SEP] " + cell_content(t, rivers.passages, 2, 2));

  SynthSpec spec;
  spec.n_questions = 40;
  spec.seed = 9;
  const auto ds = generate_synthetic(spec);
  const auto labels = label_dataset(ds);
  const auto scores = label_scores(labels);
  const ProximityReader reader;
  const auto a = ablate(ds, labels, scores, reader, {kAllModes.begin(), kAllModes.end()});
  CHECK(a == ablate(ds, labels, scores, reader, {kAllModes.begin(), kAllModes.end()}));
  CHECK(a.at(Mode::Cell).in_passage.n == 20);
  CHECK(a.at(Mode::Cell).in_passage.em == 0.0);
  CHECK(a.at(Mode::Cell).in_table.em == 1.0);
  CHECK(a.at(Mode::Multi).in_table.em == 1.0);
  CHECK(a.at(Mode::Multi).r_at_1.at("multi") == 1.0);
  CHECK(a.at(Mode::Link).in_table.em == 0.0);
  for (Mode m : kAllModes) CHECK(a.at(m).r_at_1.at("cell") == a.at(Mode::Multi).r_at_1.at("cell"));
}
