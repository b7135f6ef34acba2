#include "fixtures.hpp"
#include "oracles.hpp"

#include "hqa/errors.hpp"
#include "hqa/esel.hpp"
#include "hqa/labels.hpp"

#include <doctest.h>

using namespace hqa;

namespace {

ScoreSet from_labels(const LabelSet& l) {
  ScoreSet s;
  s.question_id = l.question_id;
  for (const auto& [id, y] : l.labels) s.scores[id] = y;
  return s;
}

// Scores on a k/1024 grid so shifted sums stay exact.
double dyadic(Rng& rng) { return static_cast<double>(rng.below(1025)) / 1024.0; }

void check_against_oracle(const oracle::Instance& in) {
  const auto fused = fuse_scores(in.scores, in.table);
  for (std::size_t i = 0; i < in.table.num_rows(); ++i) {
    for (std::size_t j = 0; j < in.table.num_cols(); ++j) {
      CHECK(fused.tab(i, j) == oracle::s_tab_at(in, i, j));
      CHECK(fused.pass(i, j) == oracle::s_pass_at(in, i, j));
      const auto bl = oracle::best_link_at(in, i, j);
      CHECK(fused.link(i, j) == (bl ? std::optional<std::size_t>(bl->second) : std::nullopt));
    }
  }
  const auto want = oracle::navigate(in);
  const auto nav = navigate(in.scores, in.table);
  CHECK(nav.answer_type == want.type);
  CHECK(nav.cell == CellCoord{want.i, want.j});
  CHECK(nav.link_index == want.link);
  CHECK(nav.s_tab == want.s_tab);
  CHECK(nav.s_pass == want.s_pass);
}

}  // namespace

TEST_CASE("single cell fuses to the plain sum") {
  HybridTable t{"t", {"H"}, {{Cell{"V", {}}}}};
  ScoreSet s{"q", {{EvidenceId::column(0), 0.1}, {EvidenceId::table_row(0), 0.3},
                   {EvidenceId::cell(0, 0), 0.5}}};
  const auto f = fuse_scores(s, t);
  CHECK(f.tab(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(f.tab(0, 0) == 0.1 + 0.3 + 0.5);
  CHECK_FALSE(f.pass(0, 0).has_value());
  const auto g = global_best(f);
  CHECK_FALSE(g.s_pass.has_value());
  CHECK_FALSE(g.pass_cell.has_value());
  CHECK(navigate(s, t).answer_type == AnswerType::InTable);

  s.scores.erase(EvidenceId::cell(0, 0));
  CHECK_THROWS_AS(fuse_scores(s, t), IncompleteScores);
}

TEST_CASE("best link prefers the lowest index among equals") {
  HybridTable t{"t", {"H"}, {{Cell{"V", {"a", "b", "c"}}}}};
  ScoreSet s{"q", {{EvidenceId::column(0), 0.0}, {EvidenceId::table_row(0), 0.0},
                   {EvidenceId::cell(0, 0), 0.0}, {EvidenceId::link_of(0, 0, 0), 0.2},
                   {EvidenceId::link_of(0, 0, 1), 0.7}, {EvidenceId::link_of(0, 0, 2), 0.7}}};
  const auto f = fuse_scores(s, t);
  CHECK(f.pass(0, 0) == 0.7);
  CHECK(f.link(0, 0) == 1);
}

TEST_CASE("ties between cells go to the lower row, then column") {
  HybridTable t{"t", {"A", "B"}, {{Cell{"a", {}}, Cell{"b", {}}}, {Cell{"c", {}}, Cell{"d", {}}}}};
  ScoreSet s{"q", {}};
  for (const auto& id : enumerate_candidates(t)) s.scores[id] = 0.0;
  s.scores[EvidenceId::cell(1, 0)] = 0.5;
  s.scores[EvidenceId::cell(0, 1)] = 0.5;
  CHECK(navigate(s, t).cell == CellCoord{0, 1});
  s.scores[EvidenceId::cell(0, 1)] = 0.25;
  s.scores[EvidenceId::cell(1, 1)] = 0.5;
  CHECK(navigate(s, t).cell == CellCoord{1, 0});
}

TEST_CASE("answer type decision") {
  CHECK(decide_answer_type(0.9, 0.3) == AnswerType::InTable);
  CHECK(decide_answer_type(0.5, 0.5) == AnswerType::InPassage);
  CHECK(decide_answer_type(0.2, std::nullopt) == AnswerType::InTable);
  CHECK(decide_answer_type(0.2, 0.3) == AnswerType::InPassage);
}

TEST_CASE("label scores navigate to the gold evidence") {
  const auto ds = fixture::rivers();
  const auto labels = label_dataset(ds);

  const auto q1 = navigate(from_labels(labels[0]), ds.table_for(ds.questions[0]));
  CHECK(q1.answer_type == AnswerType::InTable);
  CHECK(q1.cell == CellCoord{1, 2});
  CHECK_FALSE(q1.link_index.has_value());

  const auto q2 = navigate(from_labels(labels[1]), ds.table_for(ds.questions[1]));
  CHECK(q2.answer_type == AnswerType::InPassage);
  CHECK(q2.cell == CellCoord{2, 0});
  CHECK(q2.link_index == 0);

  // Same shape with the answer in the second link of cell (2,0).
  HybridTable t{"t", {"A", "B"},
                {{Cell{"x", {}}, Cell{"y", {}}}, {Cell{"x", {}}, Cell{"y", {}}},
                 {Cell{"z", {"p0", "p1"}}, Cell{"y", {}}}}};
  PassageMap ps{{"p0", {"p0", "nothing here"}}, {"p1", {"p1", "the answer is Tulsa"}}};
  Question q{"q", "t", "where?", {"Tulsa"}, std::nullopt};
  const auto nav = navigate(from_labels(label_candidates(q, t, ps)), t);
  CHECK(nav.answer_type == AnswerType::InPassage);
  CHECK(nav.cell == CellCoord{2, 0});
  CHECK(nav.link_index == 1);
}

TEST_CASE("fusion equals an exhaustive recomputation") {
  Rng rng(31);
  for (int k = 0; k < 300; ++k) check_against_oracle(oracle::random_instance(rng, 5, 3, oracle::open_unit));
  // Coarse scores force many ties.
  for (int k = 0; k < 300; ++k) {
    check_against_oracle(oracle::random_instance(rng, 4, 2, [](Rng& r) { return r.below(3) / 2.0; }));
  }
}

TEST_CASE("passage minus table score cancels the shared terms") {
  Rng rng(37);
  for (int k = 0; k < 200; ++k) {
    const auto in = oracle::random_instance(rng, 6, 3, dyadic);
    const auto f = fuse_scores(in.scores, in.table);
    for (std::size_t i = 0; i < f.rows; ++i) {
      for (std::size_t j = 0; j < f.cols; ++j) {
        const auto bl = oracle::best_link_at(in, i, j);
        if (!bl) continue;
        CHECK(*f.pass(i, j) - f.tab(i, j) ==
              bl->first - in.scores.at(EvidenceId::cell(i, j)));
      }
    }
  }
}

TEST_CASE("shifting every column or row score leaves navigation unchanged") {
  Rng rng(41);
  for (int k = 0; k < 300; ++k) {
    const auto in = oracle::random_instance(rng, 6, 3, dyadic);
    const auto base = navigate(in.scores, in.table);
    for (auto g : {Granularity::Col, Granularity::Row}) {
      auto shifted = in.scores;
      for (auto& [id, s] : shifted.scores) {
        if (id.granularity == g) s += 0.0625;
      }
      const auto nav = navigate(shifted, in.table);
      CHECK(nav.answer_type == base.answer_type);
      CHECK(nav.cell == base.cell);
      CHECK(nav.link_index == base.link_index);
      CHECK(nav.s_tab == base.s_tab + 0.0625);
    }
  }
}
