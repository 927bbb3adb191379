// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "editlab/diffusion.hpp"
#include "editlab/reward.hpp"

namespace editlab {

enum class FinetuneMode { kWeightedReward, kConditionReward, kSftBaseline };

std::string to_string(FinetuneMode m);
FinetuneMode finetune_mode_from_string(std::string_view s);

/// Mean/stddev of the training-set reward scores; scores are standardized
/// before any exponential weighting so eta has one scale across worlds.
struct ScoreStats {
  double mean = 0.0;
  double stddev = 1.0;
};

ScoreStats score_stats(const Eigen::VectorXd& scores);
double standardize(double score, const ScoreStats& stats);

/// Exponential reward weight on a standardized score, clipped from above.
double wr_weight(double standardized_score, double eta, double clip = 10.0);

/// Weighted reward loss: the denoising objective with per-record weights
/// exp(score/eta), clipped, then rescaled to mean one over the batch. With
/// equal scores this is bit-identical to sft_loss on the same rng value.
double wr_loss(const DiffusionModel& m, std::span<const Triplet> batch,
               const Eigen::VectorXd& standardized_scores, double eta,
               double clip, Rng rng);
ParameterVector wr_loss_grad(const DiffusionModel& m,
                             std::span<const Triplet> batch,
                             const Eigen::VectorXd& standardized_scores,
                             double eta, double clip, Rng rng,
                             double* value = nullptr);

/// Widen a triplet's condition with the reward bucket of its score.
/// At inference the bucket is pinned to 5 instead.
Condition cr_extend(const Triplet& t, double standardized_score,
                    const BucketTable& table);

/// Condition reward loss: the denoising objective with the bucket label as
/// a third condition slot, participating in condition dropout like the
/// others. Every record must carry a bucket in 1..5.
double cr_loss(const DiffusionModel& m, std::span<const Triplet> batch,
               const std::vector<int>& buckets, Rng rng);
ParameterVector cr_loss_grad(const DiffusionModel& m,
                             std::span<const Triplet> batch,
                             const std::vector<int>& buckets, Rng rng,
                             double* value = nullptr);

struct FinetuneConfig {
  FinetuneMode mode = FinetuneMode::kWeightedReward;
  double eta = 1.0;
  double weight_clip = 10.0;
  TrainOptions train;
};

struct FinetuneReport {
  ScoreStats stats;
  std::optional<BucketTable> buckets;  // condition-reward mode only
  TrainReport train;
};

/// Step-3 fine-tuning from an instructional checkpoint: score every record
/// with the reward model once, standardize, then continue training with the
/// selected loss. Condition-reward mode quantizes scores into five buckets
/// and leaves the model conditioned on bucket 5 at sampling time;
/// sft_baseline ignores the scores entirely (control arm).
FinetuneReport finetune(DiffusionModel& m, const std::vector<Triplet>& data,
                        const RewardModel& rm, const FinetuneConfig& cfg,
                        Rng rng);

}  // namespace editlab
