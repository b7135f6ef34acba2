#pragma once

#include "hqa/esel.hpp"
#include "hqa/scorer.hpp"
#include "hqa/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

/// Extracts an answer span from one passage.
class SpanReader {
 public:
  virtual ~SpanReader() = default;
  virtual std::string read(const Question& question, std::string_view passage) const = 0;
  virtual std::string name() const = 0;
};

/// Picks the span (up to `max_span_tokens` whitespace tokens) whose
/// flanking context holds the most question tokens.
///
/// A span [s, e) is scored as the number of tokens in [s - K, s) and
/// [e, e + K) whose normal form is a question token, minus 0.01 per span
/// token, with K = max_span_tokens. The earliest best span wins. The result
/// is the exact byte range of the passage covered by the span.
std::string extract_span(const Question& question, std::string_view passage,
                         std::size_t max_span_tokens);

class ProximityReader final : public SpanReader {
 public:
  explicit ProximityReader(std::size_t max_span_tokens = 2);

  std::string read(const Question& question, std::string_view passage) const override;
  std::string name() const override { return "proximity"; }

 private:
  std::size_t max_span_tokens_;
};

struct Prediction {
  std::string question_id;
  std::string answer;  // empty means the reader abstained
  AnswerType answer_type = AnswerType::InTable;
  Navigation navigation;
  std::string reader_name;

  bool abstained() const noexcept { return answer.empty(); }
  bool operator==(const Prediction&) const = default;
};

/// Navigates with the selector; In-Table returns the cell value verbatim,
/// In-Passage runs the reader over the navigated link's passage.
Prediction answer_question(const Question& question, const HybridTable& table,
                           const PassageMap& passages, const ScoreSet& scores,
                           const SpanReader& reader);

/// JSON lines: {"question_id","answer","answer_type","cell","link_index","reader_name"}.
std::string predictions_to_jsonl(const std::vector<Prediction>& predictions);

/// Throws SchemaError on malformed or duplicate entries and UnknownQuestion
/// for ids absent from the dataset. Fused scores are not stored in the file,
/// so imported navigations carry s_tab = 0 and no s_pass.
std::vector<Prediction> import_predictions(const std::filesystem::path& path, const Dataset& ds);

}  // namespace hqa
