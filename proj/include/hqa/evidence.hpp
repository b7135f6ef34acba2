#pragma once

#include "hqa/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

inline constexpr std::string_view kClsMarker = "[CLS]";
inline constexpr std::string_view kSepMarker = "[SEP]";

/// One scorer input: `[CLS] {tag} [SEP] {question} [SEP] {content}`.
///
/// `header` and `passages` are the structured pieces of `content` that the
/// featurizer reads directly instead of re-parsing the string.
struct EvidenceCandidate {
  EvidenceId id;
  std::string serialized;
  std::string content;
  std::string header;    // h_j for col/cell/row, empty for link
  std::string passages;  // linked passage text(s) for cell/row/link, empty for col
};

/// All candidate ids of a table: cols by j, rows by i, cells row-major, then
/// links row-major by link index.
std::vector<EvidenceId> enumerate_candidates(const HybridTable& table);

/// `{h_j} [SEP] {h_0}: {c_0} | ... | {h_N-1}: {c_N-1} [SEP] {links joined by " [SEP] "}`.
std::string cell_content(const HybridTable& table, const PassageMap& passages, std::size_t i,
                         std::size_t j);

/// Serializes one candidate. A row id expands to the N cell-style
/// serializations of its cells (tagged "row"); every other id yields one.
std::vector<EvidenceCandidate> serialize_candidate(const Question& question,
                                                   const HybridTable& table,
                                                   const PassageMap& passages,
                                                   const EvidenceId& id);

struct SerializedParts {
  std::string tag;
  std::string question;
  std::string content;
};

/// Splits a serialized candidate back into its parts. Exact when the
/// question text does not itself contain " [SEP] ".
std::optional<SerializedParts> parse_serialized(std::string_view serialized);

}  // namespace hqa
