// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/finetune.hpp"

#include <cmath>

#include "doctest.h"

using namespace editlab;

namespace {

DiffusionModel tiny_model(const World& w, std::uint64_t seed) {
  DiffusionConfig cfg;
  cfg.hidden = {12, 12};
  Rng rng(seed);
  return make_diffusion_model(cfg, instruction_vocab(w), rng);
}

RewardModel tiny_rm(const World& w, std::uint64_t seed) {
  RewardModelConfig cfg;
  cfg.hidden = {8};
  Rng rng(seed);
  return make_reward_model(cfg, instruction_vocab(w), rng);
}

}  // namespace

TEST_CASE("wr_weight analytic points") {
  CHECK(wr_weight(0.0, 1.0) == 1.0);
  CHECK(wr_weight(2.0, 2.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(wr_weight(1.7, 1e6) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(wr_weight(100.0, 1.0, 10.0) == 10.0);  // clipped
  CHECK_THROWS_AS((void)wr_weight(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("wr weights are positive, bounded, and monotone in the score") {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = rng.normal() * 2.0, b = rng.normal() * 2.0;
    const double eta = std::exp(rng.uniform(-1.0, 1.5));
    const double wa = wr_weight(a, eta), wb = wr_weight(b, eta);
    CHECK(wa > 0.0);
    CHECK(wa <= 10.0);
    if (a > b) CHECK(wa >= wb);
  }
}

TEST_CASE("wr_loss with equal scores is exactly sft_loss") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 2);
  std::vector<Triplet> batch = generate_dataset(w, 16, 0.3, Rng(3));
  Eigen::VectorXd equal = Eigen::VectorXd::Constant(16, 0.7);
  const Rng stream(4);
  CHECK(wr_loss(m, batch, equal, 1.0, 10.0, stream) ==
        sft_loss(m, batch, stream));
}

TEST_CASE("wr pre-normalization weights on a two-record batch") {
  const double eta = 1.3;
  CHECK(wr_weight(eta * std::log(2.0), eta) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(wr_weight(0.0, eta) == 1.0);
}

TEST_CASE("eta-limit: enormous eta reduces wr_loss to sft_loss") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 5);
  std::vector<Triplet> batch = generate_dataset(w, 32, 0.3, Rng(6));
  Rng score_rng(7);
  Eigen::VectorXd scores = score_rng.normal_vector(32);  // standardized-ish
  const Rng stream(8);
  const double wr = wr_loss(m, batch, scores, 1e6, 10.0, stream);
  const double sft = sft_loss(m, batch, stream);
  CHECK(std::abs(wr - sft) <= 1e-5 * std::abs(sft));
}

TEST_CASE("wr_loss gradient passes the finite-difference check") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 9);
  std::vector<Triplet> batch = generate_dataset(w, 8, 0.3, Rng(10));
  Rng score_rng(11);
  Eigen::VectorXd scores = score_rng.normal_vector(8);
  const Rng stream(12);

  ParameterVector grad = wr_loss_grad(m, batch, scores, 1.0, 10.0, stream);
  DiffusionModel probe = m;
  ParameterVector pv = pack_params(m);
  auto loss = [&](const Eigen::VectorXd& v) {
    ParameterVector p2 = pv;
    p2.values() = v;
    unpack_params(probe, p2);
    return wr_loss(probe, batch, scores, 1.0, 10.0, stream);
  };
  CHECK(grad_check(loss, grad.values(), pv.values(), 1e-4) < 1e-4);
}

TEST_CASE("cr_extend assigns buckets with the lower-bucket tie rule") {
  std::vector<double> scores;
  for (int i = 1; i <= 10; ++i) scores.push_back(double(i));
  BucketTable table = quantize(scores);

  World w = World::continuous();
  std::vector<Triplet> batch = generate_dataset(w, 1, 0.0, Rng(13));
  Condition bottom = cr_extend(batch[0], 1.5, table);
  REQUIRE(bottom.bucket.has_value());
  CHECK(*bottom.bucket == 1);
  CHECK(table.labels[size_t(*bottom.bucket - 1)] ==
        "quality one out of five");
  CHECK(*cr_extend(batch[0], 4.0, table).bucket == 2);  // exactly at b_2
  CHECK(*cr_extend(batch[0], 9.9, table).bucket == 5);
  CHECK(bottom.input.has_value());
  CHECK(bottom.instruction.has_value());
}

TEST_CASE("cr_loss equals sft_loss when the bucket rows are zeroed") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 14);
  m.bucket_embed.setZero();
  m.bucket_null.setZero();
  std::vector<Triplet> batch = generate_dataset(w, 24, 0.3, Rng(15));
  std::vector<int> buckets(24, 5);
  const Rng stream(16);
  CHECK(cr_loss(m, batch, buckets, stream) == sft_loss(m, batch, stream));
}

TEST_CASE("cr_loss rejects malformed bucket labels") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 17);
  std::vector<Triplet> batch = generate_dataset(w, 4, 0.0, Rng(18));
  CHECK_THROWS_AS((void)cr_loss(m, batch, {5, 5}, Rng(19)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)cr_loss(m, batch, {5, 0, 5, 5}, Rng(19)),
                  std::invalid_argument);
}

TEST_CASE("cr_loss gradient passes the finite-difference check") {
  World w = World::continuous();
  DiffusionModel m = tiny_model(w, 20);
  std::vector<Triplet> batch = generate_dataset(w, 8, 0.3, Rng(21));
  std::vector<int> buckets = {1, 4, 5, 2, 3, 5, 1, 2};
  const Rng stream(22);

  double value = 0.0;
  ParameterVector grad = cr_loss_grad(m, batch, buckets, stream, &value);
  CHECK(std::isfinite(value));
  DiffusionModel probe = m;
  ParameterVector pv = pack_params(m);
  auto loss = [&](const Eigen::VectorXd& v) {
    ParameterVector p2 = pv;
    p2.values() = v;
    unpack_params(probe, p2);
    return cr_loss(probe, batch, buckets, stream);
  };
  CHECK(grad_check(loss, grad.values(), pv.values(), 1e-4) < 1e-4);
}

TEST_CASE("score standardization centers and scales") {
  Rng rng(23);
  Eigen::VectorXd raw = 3.0 * rng.normal_vector(500);
  raw.array() += 7.0;
  ScoreStats stats = score_stats(raw);
  Eigen::VectorXd std_scores(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i)
    std_scores[i] = standardize(raw[i], stats);
  CHECK(std::abs(std_scores.mean()) < 1e-12);
  CHECK(std::abs(std_scores.array().square().mean() - 1.0) < 1e-12);
}

TEST_CASE("finetune runs in every mode and keeps its bookkeeping") {
  World w = World::continuous();
  std::vector<Triplet> data = generate_dataset(w, 400, 0.3, Rng(24));
  RewardModel rm = tiny_rm(w, 25);

  for (FinetuneMode mode :
       {FinetuneMode::kWeightedReward, FinetuneMode::kConditionReward,
        FinetuneMode::kSftBaseline}) {
    DiffusionModel m = tiny_model(w, 26);
    FinetuneConfig cfg;
    cfg.mode = mode;
    cfg.train.steps = 120;
    cfg.train.batch = 32;
    FinetuneReport report = finetune(m, data, rm, cfg, Rng(27));
    CHECK(std::isfinite(report.train.holdout_final));
    CHECK(report.stats.stddev > 0.0);
    if (mode == FinetuneMode::kConditionReward) {
      CHECK(report.buckets.has_value());
      CHECK(m.conditions_on_bucket);
    } else {
      CHECK(!report.buckets.has_value());
      CHECK(!m.conditions_on_bucket);
    }
  }
  CHECK(to_string(finetune_mode_from_string("cr")) == "cr");
  CHECK(to_string(finetune_mode_from_string("sft_baseline")) ==
        "sft_baseline");
}
