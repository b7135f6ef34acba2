#include "hqa/features.hpp"

#include "hqa/errors.hpp"
#include "hqa/text.hpp"

#include <array>
#include <cmath>
#include <set>
#include <unordered_set>

namespace hqa {
namespace {

std::string strip_markers(std::string_view s) {
  std::string out(s);
  for (auto pos = out.find(kSepMarker); pos != std::string::npos; pos = out.find(kSepMarker, pos)) {
    out.replace(pos, kSepMarker.size(), " ");
  }
  return out;
}

std::set<std::string, std::less<>> token_set(std::string_view s) {
  auto toks = normalized_tokens(strip_markers(s));
  return {toks.begin(), toks.end()};
}

std::size_t count_shared(const std::set<std::string, std::less<>>& q,
                         const std::set<std::string, std::less<>>& c) {
  std::size_t n = 0;
  for (const auto& t : q) n += c.contains(t) ? 1 : 0;
  return n;
}

std::unordered_set<std::string> trigrams(const std::string& s) {
  std::unordered_set<std::string> out;
  if (s.empty()) return out;
  if (s.size() < 3) {
    out.insert(s);
    return out;
  }
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) out.insert(s.substr(i, 3));
  return out;
}

}  // namespace

std::size_t FeaturizerConfig::dimension() const noexcept {
  return feature::kBlocks + (granularity_blocks ? 4 * feature::kBlockSize : 0);
}

double FeaturizerConfig::idf_of(std::string_view token) const {
  auto it = idf.find(token);
  return it == idf.end() ? default_idf : it->second;
}

FeaturizerConfig build_featurizer(const Dataset& ds, bool granularity_blocks) {
  std::map<std::string, std::size_t, std::less<>> df;
  std::size_t docs = 0;
  auto add_doc = [&](std::string_view text) {
    ++docs;
    for (const auto& t : token_set(text)) ++df[t];
  };
  for (const auto& [id, t] : ds.tables) {
    for (const auto& h : t.headers) add_doc(h);
    for (const auto& row : t.rows) {
      for (const auto& cell : row) add_doc(cell.value);
    }
  }
  for (const auto& [id, p] : ds.passages) add_doc(p.text);

  FeaturizerConfig cfg;
  cfg.granularity_blocks = granularity_blocks;
  const double d = static_cast<double>(docs);
  cfg.default_idf = std::log(1.0 + d) + 1.0;
  for (const auto& [tok, n] : df) {
    cfg.idf.emplace(tok, std::log((1.0 + d) / (1.0 + static_cast<double>(n))) + 1.0);
  }
  return cfg;
}

double trigram_jaccard(std::string_view a, std::string_view b) {
  const auto ga = trigrams(normalize_text(strip_markers(a)));
  const auto gb = trigrams(normalize_text(strip_markers(b)));
  if (ga.empty() && gb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& g : ga) inter += gb.contains(g) ? 1 : 0;
  const std::size_t uni = ga.size() + gb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

FeatureVector featurize(const FeaturizerConfig& cfg, const EvidenceCandidate& candidate,
                        const Question& question) {
  const auto q = token_set(question.text);
  const auto content = token_set(candidate.content);

  double q_mass = 0.0;
  double shared_mass = 0.0;
  for (const auto& t : q) {
    const double w = cfg.idf_of(t);
    q_mass += w;
    if (content.contains(t)) shared_mass += w;
  }

  std::array<double, feature::kBlockSize> block{};
  block[feature::kOverlap] = static_cast<double>(count_shared(q, content));
  block[feature::kIdfOverlap] = q_mass > 0.0 ? shared_mass / q_mass : 0.0;
  block[feature::kTrigramJaccard] = trigram_jaccard(question.text, candidate.content);
  block[feature::kLogLength] =
      std::log1p(static_cast<double>(normalized_tokens(strip_markers(candidate.content)).size()));
  block[feature::kHeaderMatch] = count_shared(q, token_set(candidate.header)) > 0 ? 1.0 : 0.0;
  block[feature::kPassageOverlap] = static_cast<double>(count_shared(q, token_set(candidate.passages)));

  FeatureVector h(cfg.dimension(), 0.0);
  const auto g = static_cast<std::size_t>(candidate.id.granularity);
  h[feature::kOneHot + g] = 1.0;
  for (std::size_t k = 0; k < feature::kBlockSize; ++k) {
    h[feature::kShared + k] = block[k];
    if (cfg.granularity_blocks) h[feature::kBlocks + g * feature::kBlockSize + k] = block[k];
  }
  return h;
}

std::vector<CandidateFeatures> featurize_question(const FeaturizerConfig& cfg,
                                                  const Question& question,
                                                  const HybridTable& table,
                                                  const PassageMap& passages) {
  std::vector<CandidateFeatures> out;
  for (const auto& id : enumerate_candidates(table)) {
    CandidateFeatures cf{id, {}};
    for (const auto& cand : serialize_candidate(question, table, passages, id)) {
      cf.views.push_back(featurize(cfg, cand, question));
    }
    out.push_back(std::move(cf));
  }
  return out;
}

nlohmann::ordered_json featurizer_to_json(const FeaturizerConfig& cfg) {
  nlohmann::ordered_json idf = nlohmann::ordered_json::object();
  for (const auto& [t, w] : cfg.idf) idf[t] = w;
  return {{"granularity_blocks", cfg.granularity_blocks},
          {"default_idf", cfg.default_idf},
          {"idf", std::move(idf)}};
}

FeaturizerConfig featurizer_from_json(const nlohmann::json& j) {
  FeaturizerConfig cfg;
  cfg.granularity_blocks = j.at("granularity_blocks").get<bool>();
  cfg.default_idf = j.at("default_idf").get<double>();
  for (const auto& [t, w] : j.at("idf").items()) cfg.idf.emplace(t, w.get<double>());
  return cfg;
}

}  // namespace hqa
