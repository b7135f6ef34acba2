#pragma once

#include "hqa/labels.hpp"
#include "hqa/loss.hpp"
#include "hqa/scorer.hpp"

#include <vector>

namespace hqa {

struct TrainResult {
  LinearScorer scorer;
  // Mean batch loss of each epoch, measured before each step.
  std::vector<double> epoch_losses;
};

/// Joint BCE + contrastive training of a zero-initialized scorer.
///
/// Each batch takes one positive per granularity (cycling through shuffled
/// per-granularity pools, so an epoch has as many batches as the largest
/// pool), duplicates it with seeded feature dropout, and samples
/// `group_size - 1` negatives of the same granularity from the same
/// question. Questions with too few negatives are sampled with replacement;
/// with none at all, negatives come from other questions.
///
/// Throws NoPositives when a granularity has no positive instance.
TrainResult train_with_report(const Dataset& ds, const std::vector<LabelSet>& labels,
                              const TrainConfig& cfg);

LinearScorer train(const Dataset& ds, const std::vector<LabelSet>& labels, const TrainConfig& cfg);

}  // namespace hqa
