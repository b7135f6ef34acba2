#include "hqa/loss.hpp"

#include "hqa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hqa {
namespace {

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double log_sum_exp(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

void axpy(double a, std::span<const double> x, std::vector<double>& y) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

const FeatureVector& rep(const TrainingInstance& inst, std::span<const double> w) {
  return inst.views[representative_view(inst, w)];
}

}  // namespace

void TrainConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw UsageError("tau must be positive");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("learning rate must be non-negative");
  }
  if (epochs < 0) throw UsageError("epochs must be non-negative");
  if (group_size < 1) throw UsageError("group size must be positive");
  if (negatives_per_positive != group_size - 1) {
    throw UsageError("negatives_per_positive must equal group_size - 1");
  }
  if (!(feature_noise_rate >= 0.0 && feature_noise_rate < 1.0)) {
    throw UsageError("feature noise rate must be in [0, 1)");
  }
}

double bce_loss(double s, int y) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("BCE score must lie in (0, 1)");
  if (y != 0 && y != 1) throw DomainError("BCE label must be 0 or 1");
  return y == 1 ? -std::log(s) : -std::log1p(-s);
}

double similarity(std::span<const double> h, std::span<const double> h2, const LinearScorer& scorer) {
  if (h.size() != scorer.dimension()) throw DimensionMismatch(scorer.dimension(), h.size());
  if (h2.size() != scorer.dimension()) throw DimensionMismatch(scorer.dimension(), h2.size());
  return dot(h, scorer.weights) + dot(h2, scorer.weights);
}

double cl_loss(std::span<const FeatureVector> group, const LinearScorer& scorer, double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  if (group.size() < 2) throw GroupTooSmall("contrastive group needs an anchor and its duplicate");
  std::vector<double> logits;
  logits.reserve(group.size() - 1);
  for (std::size_t k = 1; k < group.size(); ++k) {
    logits.push_back(similarity(group[0], group[k], scorer) / tau);
  }
  return log_sum_exp(logits) - logits[0];
}

std::size_t representative_view(const TrainingInstance& inst, std::span<const double> weights) {
  std::size_t best = 0;
  double best_score = dot(inst.views[0], weights);
  for (std::size_t v = 1; v < inst.views.size(); ++v) {
    const double s = dot(inst.views[v], weights);
    if (s > best_score) {
      best_score = s;
      best = v;
    }
  }
  return best;
}

LossAndGradient total_loss_and_gradient(const Batch& batch, std::span<const double> weights,
                                        const TrainConfig& cfg) {
  if (batch.groups.size() != 4) throw Error("a batch holds exactly four granularity groups");
  std::set<Granularity> seen;
  for (const auto& g : batch.groups) {
    if (!seen.insert(g.granularity).second) throw Error("duplicate granularity group in batch");
    if (g.size() != static_cast<std::size_t>(cfg.group_size)) {
      throw Error("group size does not match the training configuration");
    }
  }

  LossAndGradient out;
  out.grad.assign(weights.size(), 0.0);

  auto add_bce = [&](const TrainingInstance& inst) {
    const auto& h = rep(inst, weights);
    const double z = dot(h, weights);
    out.bce += softplus(z) - inst.label * z;
    axpy(sigmoid(z) - inst.label, h, out.grad);
  };

  for (const auto& g : batch.groups) {
    add_bce(g.anchor);
    for (const auto& n : g.negatives) add_bce(n);

    const auto& a = rep(g.anchor, weights);
    const double aw = dot(a, weights);
    std::vector<const FeatureVector*> denom;
    if (cfg.cl_denominator_includes_positive) denom.push_back(&rep(g.positive, weights));
    for (const auto& n : g.negatives) denom.push_back(&rep(n, weights));
    if (denom.empty()) throw GroupTooSmall("contrastive denominator is empty");

    const auto& p = rep(g.positive, weights);
    const double pos_logit = (aw + dot(p, weights)) / cfg.tau;
    std::vector<double> logits;
    logits.reserve(denom.size());
    for (const auto* d : denom) logits.push_back((aw + dot(*d, weights)) / cfg.tau);
    const double lse = log_sum_exp(logits);
    out.cl += lse - pos_logit;

    // d/dW: -(a + p)/tau + sum_k softmax_k (a + d_k)/tau
    axpy(-1.0 / cfg.tau, a, out.grad);
    axpy(-1.0 / cfg.tau, p, out.grad);
    for (std::size_t k = 0; k < denom.size(); ++k) {
      const double pk = std::exp(logits[k] - lse) / cfg.tau;
      axpy(pk, a, out.grad);
      axpy(pk, *denom[k], out.grad);
    }
  }
  out.loss = out.bce + out.cl;
  return out;
}

}  // namespace hqa
