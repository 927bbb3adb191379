// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/finetune.hpp"

#include <cmath>
#include <stdexcept>

#include "editlab/errors.hpp"

namespace editlab {

std::string to_string(FinetuneMode m) {
  switch (m) {
    case FinetuneMode::kWeightedReward: return "wr";
    case FinetuneMode::kConditionReward: return "cr";
    case FinetuneMode::kSftBaseline: return "sft_baseline";
  }
  return "wr";
}

FinetuneMode finetune_mode_from_string(std::string_view s) {
  if (s == "wr") return FinetuneMode::kWeightedReward;
  if (s == "cr") return FinetuneMode::kConditionReward;
  if (s == "sft_baseline") return FinetuneMode::kSftBaseline;
  throw std::invalid_argument("unknown finetune mode '" + std::string(s) +
                              "'");
}

ScoreStats score_stats(const Eigen::VectorXd& scores) {
  if (scores.size() == 0)
    throw std::invalid_argument("score_stats: empty score set");
  ScoreStats st;
  st.mean = scores.mean();
  const double var =
      (scores.array() - st.mean).square().sum() / double(scores.size());
  st.stddev = var > 0.0 ? std::sqrt(var) : 1.0;
  return st;
}

double standardize(double score, const ScoreStats& stats) {
  return (score - stats.mean) / stats.stddev;
}

double wr_weight(double standardized_score, double eta, double clip) {
  if (!(eta > 0.0)) throw std::invalid_argument("wr_weight: eta must be > 0");
  if (!(clip > 0.0))
    throw std::invalid_argument("wr_weight: clip must be > 0");
  return std::min(std::exp(standardized_score / eta), clip);
}

namespace {

Eigen::VectorXd batch_weights(std::span<const Triplet> batch,
                              const Eigen::VectorXd& scores, double eta,
                              double clip) {
  if (Eigen::Index(batch.size()) != scores.size())
    throw std::invalid_argument(
        "weighted loss: need one precomputed score per record");
  Eigen::VectorXd w(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i)
    w[i] = wr_weight(scores[i], eta, clip);
  return w / w.mean();  // effective learning rate independent of eta
}

}  // namespace

double wr_loss(const DiffusionModel& m, std::span<const Triplet> batch,
               const Eigen::VectorXd& standardized_scores, double eta,
               double clip, Rng rng) {
  const Eigen::VectorXd w = batch_weights(batch, standardized_scores, eta,
                                          clip);
  return denoising_loss(m, batch, &w, nullptr, rng);
}

ParameterVector wr_loss_grad(const DiffusionModel& m,
                             std::span<const Triplet> batch,
                             const Eigen::VectorXd& standardized_scores,
                             double eta, double clip, Rng rng, double* value) {
  const Eigen::VectorXd w = batch_weights(batch, standardized_scores, eta,
                                          clip);
  return denoising_loss_grad(m, batch, &w, nullptr, rng, value);
}

Condition cr_extend(const Triplet& t, double standardized_score,
                    const BucketTable& table) {
  Condition c = condition_of(t);
  c.bucket = bucket_of(table, standardized_score);
  return c;
}

namespace {

void check_buckets(std::span<const Triplet> batch,
                   const std::vector<int>& buckets) {
  if (buckets.size() != batch.size())
    throw std::invalid_argument(
        "condition reward loss: every record needs a bucket label");
  for (int b : buckets)
    if (b < 1 || b > 5)
      throw std::invalid_argument(
          "condition reward loss: bucket labels live in 1..5");
}

}  // namespace

double cr_loss(const DiffusionModel& m, std::span<const Triplet> batch,
               const std::vector<int>& buckets, Rng rng) {
  check_buckets(batch, buckets);
  return denoising_loss(m, batch, nullptr, &buckets, rng);
}

ParameterVector cr_loss_grad(const DiffusionModel& m,
                             std::span<const Triplet> batch,
                             const std::vector<int>& buckets, Rng rng,
                             double* value) {
  check_buckets(batch, buckets);
  return denoising_loss_grad(m, batch, nullptr, &buckets, rng, value);
}

FinetuneReport finetune(DiffusionModel& m, const std::vector<Triplet>& data,
                        const RewardModel& rm, const FinetuneConfig& cfg,
                        Rng rng) {
  if (data.empty()) throw std::invalid_argument("finetune: empty dataset");

  // one scoring pass over the whole dataset, reused by every step
  const Eigen::VectorXd raw = score_batch(rm, data);
  FinetuneReport report;
  report.stats = score_stats(raw);
  Eigen::VectorXd std_scores(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i)
    std_scores[i] = standardize(raw[i], report.stats);

  std::vector<int> record_buckets;
  if (cfg.mode == FinetuneMode::kConditionReward) {
    std::vector<double> all(std_scores.data(),
                            std_scores.data() + std_scores.size());
    report.buckets = quantize(all);
    record_buckets.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i)
      record_buckets[i] = bucket_of(*report.buckets, std_scores[Eigen::Index(i)]);
  }

  auto step = [&](const DiffusionModel& model, std::span<const Triplet> batch,
                  std::span<const std::size_t> idx, Rng r,
                  ParameterVector& grad) {
    double value = 0.0;
    switch (cfg.mode) {
      case FinetuneMode::kWeightedReward: {
        Eigen::VectorXd s(Eigen::Index(batch.size()));
        for (Eigen::Index j = 0; j < s.size(); ++j)
          s[j] = std_scores[Eigen::Index(idx[size_t(j)])];
        grad = wr_loss_grad(model, batch, s, cfg.eta, cfg.weight_clip, r,
                            &value);
        break;
      }
      case FinetuneMode::kConditionReward: {
        std::vector<int> b(batch.size());
        for (size_t j = 0; j < batch.size(); ++j)
          b[j] = record_buckets[idx[j]];
        grad = cr_loss_grad(model, batch, b, r, &value);
        break;
      }
      case FinetuneMode::kSftBaseline:
        grad = sft_loss_grad(model, batch, r, &value);
        break;
    }
    return value;
  };
  auto eval = [&](const DiffusionModel& model, std::span<const Triplet> batch,
                  Rng r) { return sft_loss(model, batch, r); };

  report.train = train_loop(m, data, cfg.train, rng, step, eval);
  if (cfg.mode == FinetuneMode::kConditionReward)
    m.conditions_on_bucket = true;
  return report;
}

}  // namespace editlab
