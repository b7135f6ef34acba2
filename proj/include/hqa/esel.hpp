#pragma once

#include "hqa/scorer.hpp"
#include "hqa/types.hpp"

#include <optional>
#include <vector>

namespace hqa {

/// Per-cell fused scores of one table.
///
///   s_tab(i,j)  = s_col(j) + s_row(i) + s_cell(i,j)
///   s_pass(i,j) = s_col(j) + s_row(i) + max_x s_link(i,j,x)   (absent without links)
///
/// Sums are evaluated left to right in exactly this order.
struct FusedScores {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> s_tab;                      // row-major
  std::vector<std::optional<double>> s_pass;      // row-major
  std::vector<std::optional<std::size_t>> best_link;  // argmax x, lowest on ties

  double tab(std::size_t i, std::size_t j) const { return s_tab[i * cols + j]; }
  std::optional<double> pass(std::size_t i, std::size_t j) const { return s_pass[i * cols + j]; }
  std::optional<std::size_t> link(std::size_t i, std::size_t j) const {
    return best_link[i * cols + j];
  }
};

struct GlobalBest {
  double s_tab = 0.0;
  CellCoord tab_cell;
  std::optional<double> s_pass;
  std::optional<CellCoord> pass_cell;
};

/// The fine-grained evidence handed to the reader.
struct Navigation {
  AnswerType answer_type = AnswerType::InTable;
  CellCoord cell;
  std::optional<std::size_t> link_index;  // set iff answer_type is InPassage
  double s_tab = 0.0;
  std::optional<double> s_pass;

  bool operator==(const Navigation&) const = default;
};

/// Throws IncompleteScores if any candidate of the table lacks a score.
FusedScores fuse_scores(const ScoreSet& scores, const HybridTable& table);

/// Maxima over all cells (s_tab) and over cells with links (s_pass). Ties go
/// to the lowest row, then the lowest column.
GlobalBest global_best(const FusedScores& fused);

/// InPassage iff s_pass exists and s_tab <= s_pass.
AnswerType decide_answer_type(double s_tab, std::optional<double> s_pass);

Navigation navigate(const ScoreSet& scores, const HybridTable& table);

}  // namespace hqa
