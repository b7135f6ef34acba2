#include "hqa/train.hpp"

#include "hqa/errors.hpp"
#include "hqa/rng.hpp"

#include <spdlog/spdlog.h>

#include <array>
#include <cmath>
#include <map>

namespace hqa {
namespace {

struct Ref {
  std::size_t question;
  std::size_t candidate;
};

struct Corpus {
  std::vector<std::vector<CandidateFeatures>> features;
  std::vector<std::vector<int>> labels;
  std::array<std::vector<Ref>, 4> positives;
  // negatives[g][question] -> candidate indices
  std::array<std::vector<std::vector<std::size_t>>, 4> negatives;
  std::array<std::vector<Ref>, 4> all_negatives;
};

Corpus build_corpus(const Dataset& ds, const std::vector<LabelSet>& labels,
                    const FeaturizerConfig& fcfg) {
  std::map<std::string, const LabelSet*, std::less<>> by_id;
  for (const auto& l : labels) by_id.emplace(l.question_id, &l);

  Corpus c;
  for (auto& n : c.negatives) n.resize(ds.questions.size());
  for (std::size_t qi = 0; qi < ds.questions.size(); ++qi) {
    const auto& q = ds.questions[qi];
    auto it = by_id.find(q.id);
    if (it == by_id.end()) throw SchemaError(q.id, "question has no labels");
    auto feats = featurize_question(fcfg, q, ds.table_for(q), ds.passages);
    std::vector<int> ys;
    ys.reserve(feats.size());
    for (std::size_t ci = 0; ci < feats.size(); ++ci) {
      const int y = it->second->at(feats[ci].id);
      ys.push_back(y);
      const auto g = static_cast<std::size_t>(feats[ci].id.granularity);
      if (y == 1) {
        c.positives[g].push_back({qi, ci});
      } else {
        c.negatives[g][qi].push_back(ci);
        c.all_negatives[g].push_back({qi, ci});
      }
    }
    c.features.push_back(std::move(feats));
    c.labels.push_back(std::move(ys));
  }
  return c;
}

TrainingInstance instance(const Corpus& c, Ref r) {
  return {c.features[r.question][r.candidate].views, c.labels[r.question][r.candidate]};
}

TrainingInstance noisy_copy(const TrainingInstance& inst, double rate, Rng& rng) {
  TrainingInstance out = inst;
  for (auto& v : out.views) {
    for (auto& x : v) {
      if (rng.bernoulli(rate)) x = 0.0;
    }
  }
  return out;
}

std::vector<Ref> sample_negatives(const Corpus& c, std::size_t g, std::size_t question,
                                  std::size_t want, Rng& rng) {
  std::vector<Ref> out;
  const auto& local = c.negatives[g][question];
  if (local.size() >= want) {
    std::vector<std::size_t> pool = local;
    for (std::size_t k = 0; k < want; ++k) {
      std::swap(pool[k], pool[k + rng.below(pool.size() - k)]);
      out.push_back({question, pool[k]});
    }
  } else if (!local.empty()) {
    for (std::size_t k = 0; k < want; ++k) out.push_back({question, local[rng.below(local.size())]});
  } else {
    const auto& global = c.all_negatives[g];
    if (global.empty() && want > 0) {
      throw Error("no negative instance for granularity " +
                  std::string(to_string(static_cast<Granularity>(g))));
    }
    for (std::size_t k = 0; k < want; ++k) out.push_back(global[rng.below(global.size())]);
  }
  return out;
}

}  // namespace

TrainResult train_with_report(const Dataset& ds, const std::vector<LabelSet>& labels,
                              const TrainConfig& cfg) {
  cfg.validate();
  const auto fcfg = build_featurizer(ds);
  const Corpus corpus = build_corpus(ds, labels, fcfg);
  for (auto g : kAllGranularities) {
    if (corpus.positives[static_cast<std::size_t>(g)].empty()) {
      throw NoPositives(std::string(to_string(g)));
    }
  }

  TrainResult result{LinearScorer::zeros(fcfg, cfg.seed), {}};
  auto& w = result.scorer.weights;
  Rng rng(cfg.seed);
  const std::size_t want = static_cast<std::size_t>(cfg.group_size - 1);

  std::size_t batches_per_epoch = 0;
  for (const auto& p : corpus.positives) batches_per_epoch = std::max(batches_per_epoch, p.size());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::array<std::vector<Ref>, 4> order = corpus.positives;
    for (auto& o : order) rng.shuffle(std::span<Ref>(o));

    std::vector<double> accum(w.size(), 0.0);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < batches_per_epoch; ++b) {
      Batch batch;
      for (std::size_t g = 0; g < 4; ++g) {
        const Ref pos = order[g][b % order[g].size()];
        TrainingGroup group;
        group.granularity = static_cast<Granularity>(g);
        group.anchor = instance(corpus, pos);
        group.positive = noisy_copy(group.anchor, cfg.feature_noise_rate, rng);
        for (const Ref& r : sample_negatives(corpus, g, pos.question, want, rng)) {
          group.negatives.push_back(instance(corpus, r));
        }
        batch.groups.push_back(std::move(group));
      }
      const auto lg = total_loss_and_gradient(batch, w, cfg);
      loss_sum += lg.loss;
      if (cfg.full_batch) {
        for (std::size_t k = 0; k < w.size(); ++k) accum[k] += lg.grad[k];
      } else {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= cfg.learning_rate * lg.grad[k];
      }
    }
    if (cfg.full_batch) {
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= cfg.learning_rate * accum[k];
    }
    for (double x : w) {
      if (!std::isfinite(x)) throw Error("training diverged: non-finite weight");
    }
    const double mean = loss_sum / static_cast<double>(batches_per_epoch);
    result.epoch_losses.push_back(mean);
    spdlog::info("epoch {} loss {:.6f}", epoch + 1, mean);
  }
  return result;
}

LinearScorer train(const Dataset& ds, const std::vector<LabelSet>& labels, const TrainConfig& cfg) {
  return train_with_report(ds, labels, cfg).scorer;
}

}  // namespace hqa
