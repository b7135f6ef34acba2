#pragma once

#include "hqa/evidence.hpp"
#include "hqa/types.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hqa {

/// Stand-in for an encoder output h_t: a fixed-length vector of lexical features.
using FeatureVector = std::vector<double>;

/// Layout of a feature vector.
///
///   [0, 4)    granularity one-hot (col, row, cell, link)
///   [4, 10)   shared lexical block
///   [10, 34)  one copy of the lexical block per granularity, only the
///             candidate's own copy non-zero (present when
///             `granularity_blocks` is set)
namespace feature {
inline constexpr std::size_t kOneHot = 0;
inline constexpr std::size_t kShared = 4;
inline constexpr std::size_t kBlockSize = 6;
inline constexpr std::size_t kBlocks = kShared + kBlockSize;

// Offsets inside a lexical block.
inline constexpr std::size_t kOverlap = 0;         // distinct question tokens found in content
inline constexpr std::size_t kIdfOverlap = 1;      // idf mass of those tokens / idf mass of question
inline constexpr std::size_t kTrigramJaccard = 2;  // character 3-gram Jaccard
inline constexpr std::size_t kLogLength = 3;       // log(1 + content tokens)
inline constexpr std::size_t kHeaderMatch = 4;     // question shares a token with the header
inline constexpr std::size_t kPassageOverlap = 5;  // distinct question tokens found in linked text
}  // namespace feature

struct FeaturizerConfig {
  std::map<std::string, double, std::less<>> idf;
  double default_idf = 1.0;
  bool granularity_blocks = true;

  std::size_t dimension() const noexcept;
  double idf_of(std::string_view token) const;

  bool operator==(const FeaturizerConfig&) const = default;
};

/// IDF over every header, cell value and passage of the dataset:
/// idf(t) = ln((1 + D) / (1 + df(t))) + 1; unseen tokens get ln(1 + D) + 1.
FeaturizerConfig build_featurizer(const Dataset& ds, bool granularity_blocks = true);

FeatureVector featurize(const FeaturizerConfig& cfg, const EvidenceCandidate& candidate,
                        const Question& question);

/// Features of every candidate of a question, in enumeration order. Row
/// candidates carry one vector per cell; all others exactly one.
struct CandidateFeatures {
  EvidenceId id;
  std::vector<FeatureVector> views;
};
std::vector<CandidateFeatures> featurize_question(const FeaturizerConfig& cfg,
                                                  const Question& question,
                                                  const HybridTable& table,
                                                  const PassageMap& passages);

double trigram_jaccard(std::string_view a, std::string_view b);

nlohmann::ordered_json featurizer_to_json(const FeaturizerConfig& cfg);
FeaturizerConfig featurizer_from_json(const nlohmann::json& j);

}  // namespace hqa
