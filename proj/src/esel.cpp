#include "hqa/esel.hpp"

namespace hqa {

FusedScores fuse_scores(const ScoreSet& scores, const HybridTable& table) {
  const std::size_t m = table.num_rows();
  const std::size_t n = table.num_cols();
  FusedScores f;
  f.rows = m;
  f.cols = n;
  f.s_tab.reserve(m * n);
  f.s_pass.reserve(m * n);
  f.best_link.reserve(m * n);

  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = scores.at(EvidenceId::column(j));

  for (std::size_t i = 0; i < m; ++i) {
    const double row = scores.at(EvidenceId::table_row(i));
    for (std::size_t j = 0; j < n; ++j) {
      f.s_tab.push_back(col[j] + row + scores.at(EvidenceId::cell(i, j)));

      const std::size_t links = table.at(i, j).link_ids.size();
      if (links == 0) {
        f.s_pass.emplace_back();
        f.best_link.emplace_back();
        continue;
      }
      std::size_t best = 0;
      double best_score = scores.at(EvidenceId::link_of(i, j, 0));
      for (std::size_t x = 1; x < links; ++x) {
        const double s = scores.at(EvidenceId::link_of(i, j, x));
        if (s > best_score) {
          best_score = s;
          best = x;
        }
      }
      f.s_pass.emplace_back(col[j] + row + best_score);
      f.best_link.emplace_back(best);
    }
  }
  return f;
}

GlobalBest global_best(const FusedScores& f) {
  GlobalBest g;
  g.s_tab = f.s_tab.at(0);
  for (std::size_t i = 0; i < f.rows; ++i) {
    for (std::size_t j = 0; j < f.cols; ++j) {
      if (f.tab(i, j) > g.s_tab) {
        g.s_tab = f.tab(i, j);
        g.tab_cell = {i, j};
      }
      if (auto p = f.pass(i, j); p && (!g.s_pass || *p > *g.s_pass)) {
        g.s_pass = p;
        g.pass_cell = CellCoord{i, j};
      }
    }
  }
  return g;
}

AnswerType decide_answer_type(double s_tab, std::optional<double> s_pass) {
  return s_pass && s_tab <= *s_pass ? AnswerType::InPassage : AnswerType::InTable;
}

Navigation navigate(const ScoreSet& scores, const HybridTable& table) {
  const auto fused = fuse_scores(scores, table);
  const auto best = global_best(fused);
  Navigation nav;
  nav.answer_type = decide_answer_type(best.s_tab, best.s_pass);
  nav.s_tab = best.s_tab;
  nav.s_pass = best.s_pass;
  if (nav.answer_type == AnswerType::InTable) {
    nav.cell = best.tab_cell;
  } else {
    nav.cell = *best.pass_cell;
    nav.link_index = fused.link(nav.cell.row, nav.cell.col);
  }
  return nav;
}

}  // namespace hqa
