#pragma once

#include "hqa/types.hpp"

#include <cstdint>

namespace hqa {

/// Parameters of the seeded toy corpus generator. Ranges are inclusive.
struct SynthSpec {
  std::size_t n_questions = 200;
  std::size_t min_rows = 3;
  std::size_t max_rows = 6;
  std::size_t min_cols = 3;
  std::size_t max_cols = 5;
  std::size_t min_links = 0;
  std::size_t max_links = 2;
  double in_table_fraction = 0.5;
  double distractor_rate = 0.2;
  std::size_t vocab_size = 2000;
  std::uint64_t seed = 42;

  /// Throws UsageError on empty ranges, fractions outside [0,1] or a
  /// vocabulary too small for the largest table.
  void validate() const;
};

/// One table per question, built from pseudo-words of a closed vocabulary.
///
/// Every question reads "what {r1} {r2} the {header} of {row key}". An
/// In-Table answer is the cell value; its relation words sit in a passage of
/// a neighbouring cell. An In-Passage answer is the token between r1 and r2
/// in one linked passage of the target cell. Distractors reuse question
/// words in other passages and rows. Questions carry no answer type; it is
/// left to be derived from labels.
///
/// Each question is re-rolled until its labels have exactly one positive
/// cell or link of the planted type; GenerationFailed after 100 attempts.
Dataset generate_synthetic(const SynthSpec& spec);

}  // namespace hqa
