// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/reward.hpp"

#include <cmath>

#include "doctest.h"
#include "editlab/errors.hpp"

using namespace editlab;

namespace {

// single linear layer whose score is exactly the edited x-coordinate
RewardModel x_scorer(const World& w) {
  RewardModelConfig cfg;
  cfg.hidden = {};
  Rng rng(1);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), rng);
  rm.net.params.values().setZero();
  rm.verb_embed.setZero();
  rm.object_embed.setZero();
  rm.net.params.mat("W0")(0, 2 + cfg.instr_embed_dim + cfg.param_dim) = 1.0;
  return rm;
}

RankedGroup group_at_xs(const World& w, const std::vector<double>& xs,
                        Rng& rng) {
  RankedGroup g;
  g.input = random_input(w, rng);
  g.instruction = random_instruction(w, rng);
  for (double x : xs) g.variants.push_back({{x, 0.0}, -1});
  g.variant_seeds.assign(xs.size(), 0);
  // best first = descending x under the x_scorer
  std::vector<std::pair<double, int>> order;
  for (size_t k = 0; k < xs.size(); ++k) order.push_back({xs[k], int(k)});
  std::sort(order.begin(), order.end(),
            [](auto& a, auto& b) { return a.first > b.first; });
  for (auto& [x, k] : order) g.ranking.push_back(k);
  return g;
}

std::vector<RankedGroup> synthetic_linear_groups(const World& w, int n,
                                                 double spread, Rng& rng,
                                                 bool invert_rankings = false) {
  std::vector<RankedGroup> groups;
  for (int i = 0; i < n; ++i) {
    Rng rec = rng.split(std::uint64_t(i));
    RankedGroup g;
    g.input = random_input(w, rec);
    g.instruction = random_instruction(w, rec);
    const Eigen::Vector2d target =
        true_edit_mean(w, g.input, g.instruction);
    for (int k = 0; k < 5; ++k) {
      Eigen::Vector2d v = target + spread * Eigen::Vector2d(rec.normal(),
                                                            rec.normal());
      g.variants.push_back({v, -1});
      g.variant_seeds.push_back(std::uint64_t(k));
    }
    PreferenceOracle oracle{1.0, 0.5, 0.0};
    g.ranking = rank_with_oracle(oracle, w, g, rec);
    if (invert_rankings)
      std::reverse(g.ranking.begin(), g.ranking.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

TEST_CASE("bt_loss: equal scores give ln 2 per pair") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(2);
  RankedGroup g = group_at_xs(w, {0.7, 0.7}, rng);
  CHECK(bt_loss(rm, {&g, 1}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  RankedGroup g5 = group_at_xs(w, {0.3, 0.3, 0.3, 0.3, 0.3}, rng);
  CHECK(bt_loss(rm, {&g5, 1}) ==
        doctest::Approx(10.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("bt_loss: gap of ln 3 gives ln(4/3)") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(3);
  RankedGroup g = group_at_xs(w, {std::log(3.0), 0.0}, rng);
  CHECK(bt_loss(rm, {&g, 1}) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("bt_loss: K = 5 ladder matches direct softplus summation") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(4);
  const double delta = 0.37;
  std::vector<double> xs;
  for (int k = 0; k < 5; ++k) xs.push_back(-delta * k);
  RankedGroup g = group_at_xs(w, xs, rng);

  double direct = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) {
      const double gap = delta * (b - a);
      direct += std::log1p(std::exp(-gap));
    }
  CHECK(bt_loss(rm, {&g, 1}) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("bt_loss: widening a correctly-ordered gap lowers the loss") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(5);
  RankedGroup near = group_at_xs(w, {0.4, 0.0}, rng);
  RankedGroup far = group_at_xs(w, {1.4, 0.0}, rng);
  CHECK(bt_loss(rm, {&far, 1}) < bt_loss(rm, {&near, 1}));
  CHECK(bt_loss(rm, {&near, 1}) >= 0.0);
}

TEST_CASE("bt_loss rejects flagged groups") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(6);
  RankedGroup g = group_at_xs(w, {1.0, 0.0}, rng);
  g.flags = kNoneFollow;
  CHECK_THROWS_AS((void)bt_loss(rm, {&g, 1}), std::invalid_argument);
}

TEST_CASE("bt_loss gradient passes the finite-difference check") {
  World w = World::continuous();
  RewardModelConfig cfg;
  cfg.hidden = {8, 8};
  Rng rng(7);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), rng);
  std::vector<RankedGroup> groups = synthetic_linear_groups(w, 3, 0.8, rng);

  ParameterVector grad = bt_loss_grad(rm, groups);
  RewardModel probe = rm;
  ParameterVector pv = pack_params(rm);
  auto loss = [&](const Eigen::VectorXd& v) {
    ParameterVector p2 = pv;
    p2.values() = v;
    unpack_params(probe, p2);
    return bt_loss(probe, groups);
  };
  CHECK(grad_check(loss, grad.values(), pv.values(), 1e-4) < 1e-4);
}

TEST_CASE("score is pure and batch-order invariant") {
  World w = World::continuous();
  RewardModelConfig cfg;
  Rng rng(8);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), rng);
  std::vector<Triplet> batch = generate_dataset(w, 32, 0.4, Rng(9));

  Triplet t = batch[5];
  CHECK(score(rm, t) == score(rm, t));

  Eigen::VectorXd forwardly = score_batch(rm, batch);
  std::vector<Triplet> reversed(batch.rbegin(), batch.rend());
  Eigen::VectorXd backwardly = score_batch(rm, reversed);
  for (Eigen::Index i = 0; i < forwardly.size(); ++i)
    CHECK(forwardly[i] == backwardly[forwardly.size() - 1 - i]);
}

TEST_CASE("train_rm: recovers a noiseless synthetic ranking") {
  World w = World::continuous();
  Rng rng(10);
  std::vector<RankedGroup> groups = synthetic_linear_groups(w, 220, 1.0, rng);
  RewardModelConfig cfg;
  Rng init(11);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), init);
  RmTrainOptions opts;
  opts.steps = 1200;
  RmTrainReport report = train_rm(rm, groups, opts, Rng(12));
  CHECK(report.holdout_accuracy >= 0.95);
  CHECK(report.train_groups + report.holdout_groups == 220);
}

TEST_CASE("train_rm: inverted labels anti-correlate with the oracle") {
  World w = World::continuous();
  Rng rng(13);
  std::vector<RankedGroup> groups =
      synthetic_linear_groups(w, 160, 1.0, rng, /*invert=*/true);
  RewardModelConfig cfg;
  Rng init(14);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), init);
  RmTrainOptions opts;
  opts.steps = 900;
  train_rm(rm, groups, opts, Rng(15));

  std::vector<RankedGroup> eval_groups = synthetic_linear_groups(w, 40, 1.0,
                                                                 rng);
  PreferenceOracle oracle{1.0, 0.5, 0.0};
  RmEvalReport ev = eval_rm(rm, eval_groups, w, oracle);
  CHECK(ev.kendall_tau < -0.5);
}

TEST_CASE("untrained model sits at chance accuracy") {
  World w = World::continuous();
  Rng rng(16);
  std::vector<RankedGroup> groups = synthetic_linear_groups(w, 300, 1.0, rng);
  RewardModelConfig cfg;
  Rng init(17);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), init);
  const double acc = pairwise_accuracy(rm, groups);  // 3000 balanced pairs
  CHECK(acc > 0.45);
  CHECK(acc < 0.55);
}

TEST_CASE("eval_rm: the ranking source itself scores accuracy 1") {
  World w = World::continuous();
  RewardModel rm = x_scorer(w);
  Rng rng(18);
  std::vector<RankedGroup> groups;
  for (int i = 0; i < 10; ++i)
    groups.push_back(
        group_at_xs(w, {0.1 * i, 0.5 + 0.03 * i, -1.0, 2.0 - 0.1 * i}, rng));
  PreferenceOracle oracle;
  RmEvalReport ev = eval_rm(rm, groups, w, oracle);
  CHECK(ev.pairwise_accuracy == doctest::Approx(1.0));

  // constant scorer sits at one half by the tie convention
  RewardModel flat = x_scorer(w);
  flat.net.params.values().setZero();
  CHECK(eval_rm(flat, groups, w, oracle).pairwise_accuracy ==
        doctest::Approx(0.5));
}

TEST_CASE("eval_rm matches an independent recomputation from raw pairs") {
  World w = World::continuous();
  Rng rng(19);
  std::vector<RankedGroup> groups = synthetic_linear_groups(w, 25, 1.0, rng);
  RewardModelConfig cfg;
  Rng init(20);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), init);
  PreferenceOracle oracle{1.0, 0.5, 0.0};
  RmEvalReport ev = eval_rm(rm, groups, w, oracle);

  double correct = 0.0;
  long total = 0;
  for (const RankedGroup& g : groups) {
    std::vector<double> s;
    for (const Sample& v : g.variants)
      s.push_back(score(rm, {g.input, g.instruction, v, Provenance::kClean,
                             0}));
    for (auto [a, b] : pairs_from_ranking(g)) {
      if (s[size_t(a)] > s[size_t(b)]) correct += 1.0;
      else if (s[size_t(a)] == s[size_t(b)]) correct += 0.5;
      ++total;
    }
  }
  CHECK(ev.pairwise_accuracy ==
        doctest::Approx(correct / double(total)).epsilon(1e-12));
}

TEST_CASE("quantize: exact quintiles on 1..10") {
  std::vector<double> scores;
  for (int i = 1; i <= 10; ++i) scores.push_back(double(i));
  BucketTable table = quantize(scores);
  CHECK(table.boundaries[0] == 2.0);
  CHECK(table.boundaries[1] == 4.0);
  CHECK(table.boundaries[2] == 6.0);
  CHECK(table.boundaries[3] == 8.0);
  CHECK(!table.degenerate);
  CHECK(bucket_of(table, 2.0) == 1);  // boundary ties go down
  CHECK(bucket_of(table, 2.1) == 2);
  CHECK(bucket_of(table, 9.0) == 5);
  CHECK(table.labels[0] == "quality one out of five");
  CHECK(table.labels[4] == "quality five out of five");
}

TEST_CASE("quantize: all-equal scores collapse to bucket one") {
  std::vector<double> scores(12, 3.3);
  BucketTable table = quantize(scores);
  CHECK(table.degenerate);
  CHECK(bucket_of(table, 3.3) == 1);
  CHECK_THROWS_AS((void)quantize(std::vector<double>{1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("bucket populations split within one element on distinct scores") {
  Rng rng(21);
  std::vector<double> scores;
  for (int i = 0; i < 103; ++i) scores.push_back(rng.normal());
  BucketTable table = quantize(scores);
  std::array<int, 5> counts{};
  for (double s : scores) counts[size_t(bucket_of(table, s) - 1)] += 1;
  int total = 0;
  for (int c : counts) {
    CHECK(std::abs(c - 103.0 / 5.0) <= 1.0);
    total += c;
  }
  CHECK(total == 103);
}

TEST_CASE("positive affine rescaling changes nothing that matters") {
  World w = World::continuous();
  Rng rng(22);
  std::vector<RankedGroup> groups = synthetic_linear_groups(w, 30, 1.0, rng);
  RewardModelConfig cfg;
  Rng init(23);
  RewardModel rm = make_reward_model(cfg, instruction_vocab(w), init);

  RewardModel scaled = rm;  // score' = a * score + b via the output layer
  const double a = 3.7, b = -1.9;
  const std::string last_w = "W" + std::to_string(cfg.hidden.size());
  const std::string last_b = "b" + std::to_string(cfg.hidden.size());
  scaled.net.params.mat(last_w) *= a;
  scaled.net.params.vec(last_b) =
      (a * rm.net.params.vec(last_b).array() + b).matrix();

  PreferenceOracle oracle{1.0, 0.5, 0.0};
  RmEvalReport e1 = eval_rm(rm, groups, w, oracle);
  RmEvalReport e2 = eval_rm(scaled, groups, w, oracle);
  CHECK(e1.pairwise_accuracy == doctest::Approx(e2.pairwise_accuracy));
  CHECK(e1.kendall_tau == doctest::Approx(e2.kendall_tau));

  std::vector<Triplet> batch = generate_dataset(w, 50, 0.3, Rng(24));
  Eigen::VectorXd s1 = score_batch(rm, batch);
  Eigen::VectorXd s2 = score_batch(scaled, batch);
  std::vector<double> v1(s1.data(), s1.data() + s1.size());
  std::vector<double> v2(s2.data(), s2.data() + s2.size());
  BucketTable t1 = quantize(v1);
  BucketTable t2 = quantize(v2);
  for (Eigen::Index i = 0; i < s1.size(); ++i)
    CHECK(bucket_of(t1, s1[i]) == bucket_of(t2, s2[i]));
}
