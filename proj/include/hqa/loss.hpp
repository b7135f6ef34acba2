#pragma once

#include "hqa/features.hpp"
#include "hqa/scorer.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hqa {

struct TrainConfig {
  double tau = 0.05;
  double learning_rate = 0.001;
  int epochs = 40;
  // Instances per granularity group: one positive plus its negatives.
  int group_size = 6;
  int negatives_per_positive = 5;
  std::uint64_t seed = 0;
  // Probability of zeroing each feature of the positive's second view.
  double feature_noise_rate = 0.1;
  // One step per epoch on the summed gradient instead of one per batch.
  bool full_batch = false;
  // Whether the positive pair's term appears in the contrastive denominator.
  bool cl_denominator_includes_positive = true;

  /// Throws UsageError on out-of-range fields.
  void validate() const;
};

/// One training candidate. Rows carry one view per cell and are represented
/// by whichever view scores highest under the current weights.
struct TrainingInstance {
  std::vector<FeatureVector> views;
  int label = 0;
};

/// One granularity's share of a batch: the positive anchor, its noisy second
/// view, and same-granularity negatives.
struct TrainingGroup {
  Granularity granularity = Granularity::Col;
  TrainingInstance anchor;
  TrainingInstance positive;
  std::vector<TrainingInstance> negatives;

  std::size_t size() const noexcept { return 1 + negatives.size(); }
};

struct Batch {
  std::vector<TrainingGroup> groups;
};

/// -[y ln s + (1 - y) ln(1 - s)]. Throws DomainError unless s in (0,1) and y in {0,1}.
double bce_loss(double s, int y);

/// h.W + h2.W. Throws DimensionMismatch.
double similarity(std::span<const double> h, std::span<const double> h2, const LinearScorer& scorer);

/// Contrastive loss of one group laid out as [anchor, noisy duplicate,
/// negatives...]:
///   -ln( exp(sim(a, a+)/tau) / sum_{d in D} exp(sim(a, d)/tau) )
/// where D is the duplicate plus every negative.
double cl_loss(std::span<const FeatureVector> group, const LinearScorer& scorer, double tau);

struct LossAndGradient {
  double loss = 0.0;
  double bce = 0.0;
  double cl = 0.0;
  std::vector<double> grad;
};

/// Sum of BCE over every anchor and negative plus one contrastive term per
/// group, with the exact gradient in W. Requires four groups, one per
/// granularity, each of `cfg.group_size` instances.
LossAndGradient total_loss_and_gradient(const Batch& batch, std::span<const double> weights,
                                        const TrainConfig& cfg);

/// Index of the view with the largest h.W (lowest index on ties).
std::size_t representative_view(const TrainingInstance& inst, std::span<const double> weights);

}  // namespace hqa
