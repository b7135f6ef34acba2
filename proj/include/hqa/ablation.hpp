#pragma once

#include "hqa/labels.hpp"
#include "hqa/metrics.hpp"
#include "hqa/reader.hpp"
#include "hqa/scorer.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

/// Retrieval setting: a single granularity, or all four fused by the selector.
enum class Mode { Col, Row, Cell, Link, Multi };

inline constexpr std::array<Mode, 5> kAllModes = {Mode::Col, Mode::Row, Mode::Cell, Mode::Link,
                                                  Mode::Multi};

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

/// Longest text handed to the reader for a flattened column or row.
inline constexpr std::size_t kMaxFlattenedBytes = 4096;

/// Cell-style contents of every cell in column j, joined by " [SEP] ".
std::string flatten_column(const HybridTable& table, const PassageMap& passages, std::size_t j);
std::string flatten_row(const HybridTable& table, const PassageMap& passages, std::size_t i);

/// Cuts to at most `max_bytes` without splitting a UTF-8 sequence.
std::string truncate_utf8(std::string s, std::size_t max_bytes);

/// Answers one question using only the evidence `mode` retrieves.
///
///   col/row - reader over the flattened top-1 column/row; the navigation
///             records its first cell
///   cell    - value of the top-1 cell
///   link    - reader over the top-1 link's passage
///   multi   - the full selector
Prediction predict_with_mode(Mode mode, const Question& question, const HybridTable& table,
                             const PassageMap& passages, const ScoreSet& scores,
                             const SpanReader& reader);

/// Evaluates each mode. The "multi" R@1 slot of a single-granularity mode
/// holds the hit rate of that mode's top-1 evidence.
std::map<Mode, MetricsReport> ablate(const Dataset& ds, const std::vector<LabelSet>& labels,
                                     const std::vector<ScoreSet>& scores, const SpanReader& reader,
                                     const std::vector<Mode>& modes);

std::map<Mode, MetricsReport> ablate(const Dataset& ds, const std::vector<LabelSet>& labels,
                                     const LinearScorer& scorer, const SpanReader& reader,
                                     const std::vector<Mode>& modes);

}  // namespace hqa
