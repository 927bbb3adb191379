// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "editlab/numerics.hpp"
#include "editlab/preference.hpp"
#include "editlab/worlds.hpp"

namespace editlab {

struct RewardModelConfig {
  std::vector<int> hidden = {48, 48};
  Activation act = Activation::kTanh;
  int instr_embed_dim = 6;
  int param_dim = 2;
};

/// Scalar preference scorer over (input sample, instruction, edited sample),
/// realized as an MLP on the concatenated embeddings. The instruction
/// embedding is the sum of a verb vector and an object vector so the scorer
/// composes to verb-object combinations absent from its training split.
struct RewardModel {
  RewardModelConfig cfg;
  std::vector<std::pair<std::string, std::string>> vocab;
  std::vector<std::string> verbs;    // distinct verbs, in vocab order
  std::vector<std::string> objects;  // distinct objects, in vocab order
  Mlp net;
  Eigen::MatrixXd verb_embed;    // instr_embed_dim x verbs
  Eigen::MatrixXd object_embed;  // instr_embed_dim x objects
};

RewardModel make_reward_model(
    const RewardModelConfig& cfg,
    std::vector<std::pair<std::string, std::string>> vocab, Rng& init_rng);

ParameterVector pack_params(const RewardModel& rm);
void unpack_params(RewardModel& rm, const ParameterVector& pv);

double score(const RewardModel& rm, const Triplet& t);
Eigen::VectorXd score_batch(const RewardModel& rm,
                            std::span<const Triplet> batch);

/// Bradley-Terry pairwise loss summed over all C(K,2) ordered pairs of every
/// group: sum of -log sigmoid(R_better - R_worse), evaluated through the
/// log-sum-exp identity so large scores cannot overflow.
double bt_loss(const RewardModel& rm, std::span<const RankedGroup> groups);
ParameterVector bt_loss_grad(const RewardModel& rm,
                             std::span<const RankedGroup> groups,
                             double* value = nullptr);

struct RmTrainOptions {
  int steps = 1500;
  int groups_per_batch = 8;
  double lr = 1e-3;
  int holdout_every = 5;  // every n-th instruction goes to validation
  int eval_every = 150;
};

struct RmTrainReport {
  std::size_t train_groups = 0;
  std::size_t holdout_groups = 0;
  double holdout_accuracy = 0.0;  // fraction of held-out pairs ordered right
  std::vector<std::pair<int, double>> loss_curve;  // mean loss per pair
};

/// Whole groups share a batch; the split is by instruction so no condition
/// leaks pairs across it. Throws TrainingDiverged on non-finite loss.
RmTrainReport train_rm(RewardModel& rm, const std::vector<RankedGroup>& groups,
                       const RmTrainOptions& opts, Rng rng);

double pairwise_accuracy(const RewardModel& rm,
                         std::span<const RankedGroup> groups);

struct RmEvalReport {
  double pairwise_accuracy = 0.0;
  double kendall_tau = 0.0;  // vs the exact oracle reward, mean over groups
  std::array<double, 5> bucket_mean_oracle{};  // calibration by score bucket
};

RmEvalReport eval_rm(const RewardModel& rm,
                     std::span<const RankedGroup> groups, const World& w,
                     const PreferenceOracle& oracle);

/// Five quantile buckets over an empirical score distribution. b0 = -inf and
/// b5 = +inf are implicit; label k covers (b_{k-1}, b_k], so ties at a
/// boundary land in the lower bucket.
struct BucketTable {
  std::array<double, 4> boundaries{};
  std::array<std::string, 5> labels{};
  bool degenerate = false;  // fewer than five distinct scores
};

BucketTable quantize(std::span<const double> scores);
int bucket_of(const BucketTable& table, double score);

}  // namespace editlab
