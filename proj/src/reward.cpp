// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "editlab/errors.hpp"

namespace editlab {

namespace {

int rm_input_width(const RewardModelConfig& cfg) {
  // input, instruction embedding, raw params, edited, displacement
  return 2 + cfg.instr_embed_dim + cfg.param_dim + 2 + 2;
}

std::pair<int, int> embed_cols(const RewardModel& rm,
                               const EditInstruction& instr) {
  int v = -1, o = -1;
  for (size_t i = 0; i < rm.verbs.size(); ++i)
    if (rm.verbs[i] == instr.verb) v = int(i);
  for (size_t i = 0; i < rm.objects.size(); ++i)
    if (rm.objects[i] == instr.object) o = int(i);
  if (v < 0 || o < 0)
    throw UnsupportedInstruction("instruction (" + instr.verb + ", " +
                                 instr.object +
                                 ") not in the reward model vocabulary");
  return {v, o};
}

Eigen::MatrixXd assemble(const RewardModel& rm,
                         std::span<const Triplet> batch) {
  const auto& cfg = rm.cfg;
  Eigen::MatrixXd X(rm_input_width(cfg), Eigen::Index(batch.size()));
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const Triplet& t = batch[size_t(j)];
    const auto [v, o] = embed_cols(rm, t.instruction);
    X.col(j).segment(0, 2) = t.input.coords;
    X.col(j).segment(2, cfg.instr_embed_dim) =
        rm.verb_embed.col(v) + rm.object_embed.col(o);
    X.col(j).segment(2 + cfg.instr_embed_dim, cfg.param_dim) =
        t.instruction.params.head(cfg.param_dim);
    X.col(j).segment(2 + cfg.instr_embed_dim + cfg.param_dim, 2) =
        t.edited.coords;
    X.col(j).segment(2 + cfg.instr_embed_dim + cfg.param_dim + 2, 2) =
        t.edited.coords - t.input.coords;
  }
  return X;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

double softplus(double x) {
  // log(1 + e^x) without overflow
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

std::vector<Triplet> group_triplets(const RankedGroup& g) {
  std::vector<Triplet> out;
  out.reserve(g.variants.size());
  for (const Sample& v : g.variants)
    out.push_back({g.input, g.instruction, v, Provenance::kClean, 0});
  return out;
}

}  // namespace

RewardModel make_reward_model(
    const RewardModelConfig& cfg,
    std::vector<std::pair<std::string, std::string>> vocab, Rng& init_rng) {
  if (vocab.empty()) throw std::invalid_argument("empty instruction vocab");
  RewardModel rm;
  rm.cfg = cfg;
  rm.vocab = std::move(vocab);
  for (const auto& [verb, object] : rm.vocab) {
    if (std::find(rm.verbs.begin(), rm.verbs.end(), verb) == rm.verbs.end())
      rm.verbs.push_back(verb);
    if (std::find(rm.objects.begin(), rm.objects.end(), object) ==
        rm.objects.end())
      rm.objects.push_back(object);
  }
  std::vector<int> widths;
  widths.push_back(rm_input_width(cfg));
  for (int h : cfg.hidden) widths.push_back(h);
  widths.push_back(1);
  rm.net = make_mlp(widths, cfg.act, init_rng);
  auto fill = [&](Eigen::MatrixXd& table, size_t cols) {
    const double bound =
        std::sqrt(6.0 / double(cfg.instr_embed_dim + Eigen::Index(cols)));
    table.resize(cfg.instr_embed_dim, Eigen::Index(cols));
    for (Eigen::Index c = 0; c < table.cols(); ++c)
      for (Eigen::Index r = 0; r < table.rows(); ++r)
        table(r, c) = init_rng.uniform(-bound, bound);
  };
  fill(rm.verb_embed, rm.verbs.size());
  fill(rm.object_embed, rm.objects.size());
  return rm;
}

ParameterVector pack_params(const RewardModel& rm) {
  std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>> spec;
  for (const auto& b : rm.net.params.blocks())
    spec.emplace_back("net." + b.name, b.rows, b.cols);
  spec.emplace_back("verb_embed", rm.verb_embed.rows(), rm.verb_embed.cols());
  spec.emplace_back("object_embed", rm.object_embed.rows(),
                    rm.object_embed.cols());
  ParameterVector pv = ParameterVector::zeros(spec);
  for (const auto& b : rm.net.params.blocks())
    pv.mat("net." + b.name) = rm.net.params.mat(b.name);
  pv.mat("verb_embed") = rm.verb_embed;
  pv.mat("object_embed") = rm.object_embed;
  return pv;
}

void unpack_params(RewardModel& rm, const ParameterVector& pv) {
  for (const auto& b : rm.net.params.blocks())
    rm.net.params.mat(b.name) = pv.mat("net." + b.name);
  rm.verb_embed = pv.mat("verb_embed");
  rm.object_embed = pv.mat("object_embed");
}

double score(const RewardModel& rm, const Triplet& t) {
  return forward(rm.net, assemble(rm, std::span<const Triplet>(&t, 1)))(0, 0);
}

Eigen::VectorXd score_batch(const RewardModel& rm,
                            std::span<const Triplet> batch) {
  if (batch.empty()) return Eigen::VectorXd();
  return forward(rm.net, assemble(rm, batch)).row(0).transpose();
}

namespace {

struct GroupScores {
  Eigen::VectorXd scores;           // concatenated variant scores
  std::vector<Eigen::Index> first;  // offset of each group's block
  Eigen::MatrixXd inputs;           // assembled net inputs (for backward)
  std::vector<std::pair<int, int>> cols;  // (verb, object) column per sample
};

GroupScores score_groups(const RewardModel& rm,
                         std::span<const RankedGroup> groups) {
  GroupScores out;
  Eigen::Index total = 0;
  for (const RankedGroup& g : groups) {
    out.first.push_back(total);
    total += Eigen::Index(g.variants.size());
  }
  out.inputs.resize(rm_input_width(rm.cfg), total);
  out.cols.resize(size_t(total));
  Eigen::Index col = 0;
  for (const RankedGroup& g : groups) {
    const auto vo = embed_cols(rm, g.instruction);
    for (const Sample& v : g.variants) {
      out.inputs.col(col).segment(0, 2) = g.input.coords;
      out.inputs.col(col).segment(2, rm.cfg.instr_embed_dim) =
          rm.verb_embed.col(vo.first) + rm.object_embed.col(vo.second);
      out.inputs.col(col).segment(2 + rm.cfg.instr_embed_dim,
                                  rm.cfg.param_dim) =
          g.instruction.params.head(rm.cfg.param_dim);
      out.inputs
          .col(col)
          .segment(2 + rm.cfg.instr_embed_dim + rm.cfg.param_dim, 2) =
          v.coords;
      out.inputs
          .col(col)
          .segment(2 + rm.cfg.instr_embed_dim + rm.cfg.param_dim + 2, 2) =
          v.coords - g.input.coords;
      out.cols[size_t(col)] = vo;
      ++col;
    }
  }
  out.scores = forward(rm.net, out.inputs).row(0).transpose();
  return out;
}

}  // namespace

double bt_loss(const RewardModel& rm, std::span<const RankedGroup> groups) {
  for (const RankedGroup& g : groups)
    if (g.flags != 0)
      throw std::invalid_argument("bt_loss: flagged group in batch");
  GroupScores gs = score_groups(rm, groups);
  double loss = 0.0;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const Eigen::Index base = gs.first[gi];
    for (const auto& [better, worse] : pairs_from_ranking(groups[gi]))
      loss += softplus(-(gs.scores[base + better] - gs.scores[base + worse]));
  }
  return loss;
}

ParameterVector bt_loss_grad(const RewardModel& rm,
                             std::span<const RankedGroup> groups,
                             double* value) {
  for (const RankedGroup& g : groups)
    if (g.flags != 0)
      throw std::invalid_argument("bt_loss_grad: flagged group in batch");
  GroupScores gs = score_groups(rm, groups);

  double loss = 0.0;
  Eigen::VectorXd score_cot = Eigen::VectorXd::Zero(gs.scores.size());
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const Eigen::Index base = gs.first[gi];
    for (const auto& [better, worse] : pairs_from_ranking(groups[gi])) {
      const double gap = gs.scores[base + better] - gs.scores[base + worse];
      loss += softplus(-gap);
      const double d = -1.0 / (1.0 + std::exp(gap));  // d softplus(-gap)/d gap
      score_cot[base + better] += d;
      score_cot[base + worse] -= d;
    }
  }
  if (value) *value = loss;

  const MlpGradients g = backward(rm.net, gs.inputs, score_cot.transpose());
  ParameterVector pv = pack_params(rm).zeros_like();
  for (const auto& b : rm.net.params.blocks())
    pv.mat("net." + b.name) = g.params.mat(b.name);
  auto verb_grad = pv.mat("verb_embed");
  auto object_grad = pv.mat("object_embed");
  for (Eigen::Index col = 0; col < gs.inputs.cols(); ++col) {
    const auto seg = g.inputs.col(col).segment(2, rm.cfg.instr_embed_dim);
    verb_grad.col(gs.cols[size_t(col)].first) += seg;
    object_grad.col(gs.cols[size_t(col)].second) += seg;
  }
  return pv;
}

double pairwise_accuracy(const RewardModel& rm,
                         std::span<const RankedGroup> groups) {
  double correct = 0.0;
  long total = 0;
  for (const RankedGroup& g : groups) {
    Eigen::VectorXd s = score_batch(rm, group_triplets(g));
    for (const auto& [better, worse] : pairs_from_ranking(g)) {
      if (s[better] > s[worse])
        correct += 1.0;
      else if (s[better] == s[worse])
        correct += 0.5;
      ++total;
    }
  }
  return total == 0 ? 0.0 : correct / double(total);
}

RmTrainReport train_rm(RewardModel& rm, const std::vector<RankedGroup>& groups,
                       const RmTrainOptions& opts, Rng rng) {
  std::vector<const RankedGroup*> usable;
  for (const RankedGroup& g : groups)
    if (g.flags == 0 && !g.ranking.empty()) usable.push_back(&g);
  if (usable.empty())
    throw std::invalid_argument("train_rm: no unflagged ranked groups");

  // split by instruction, never by pair
  std::vector<RankedGroup> train, holdout;
  for (const RankedGroup* g : usable) {
    if (opts.holdout_every > 0 &&
        fnv1a(g->instruction.text) % std::uint64_t(opts.holdout_every) == 0)
      holdout.push_back(*g);
    else
      train.push_back(*g);
  }
  if (train.empty()) std::swap(train, holdout);
  if (holdout.empty()) holdout.push_back(train.back());

  RmTrainReport report;
  report.train_groups = train.size();
  report.holdout_groups = holdout.size();

  ParameterVector params = pack_params(rm);
  AdamState adam;
  AdamConfig adam_cfg;
  adam_cfg.lr = opts.lr;

  std::vector<RankedGroup> batch(size_t(opts.groups_per_batch));
  for (int step = 1; step <= opts.steps; ++step) {
    Rng step_rng = rng.split(std::uint64_t(step));
    long pairs = 0;
    for (int j = 0; j < opts.groups_per_batch; ++j) {
      batch[size_t(j)] = train[step_rng.uniform_int(train.size())];
      const long k = long(batch[size_t(j)].variants.size());
      pairs += k * (k - 1) / 2;
    }
    double loss = 0.0;
    ParameterVector grad = bt_loss_grad(rm, batch, &loss);
    if (!std::isfinite(loss))
      throw TrainingDiverged("reward training diverged at step " +
                             std::to_string(step));
    // per-pair scaling keeps the step size independent of K and batch size
    grad.values() /= double(pairs);
    adam_cfg.lr = opts.lr * (1.0 - 0.9 * double(step - 1) /
                                       double(std::max(1, opts.steps - 1)));
    adam_step(params.values(), grad.values(), adam, adam_cfg);
    unpack_params(rm, params);
    if (step % std::max(1, opts.eval_every) == 0 || step == opts.steps)
      report.loss_curve.emplace_back(step, loss / double(pairs));
  }
  report.holdout_accuracy = pairwise_accuracy(rm, holdout);
  return report;
}

RmEvalReport eval_rm(const RewardModel& rm,
                     std::span<const RankedGroup> groups, const World& w,
                     const PreferenceOracle& oracle) {
  if (groups.empty()) throw std::invalid_argument("eval_rm: empty group set");
  RmEvalReport report;
  report.pairwise_accuracy = pairwise_accuracy(rm, groups);

  double tau_sum = 0.0;
  long tau_groups = 0;
  std::vector<double> all_scores;
  std::vector<double> all_oracle;
  for (const RankedGroup& g : groups) {
    const std::vector<Triplet> triplets = group_triplets(g);
    const Eigen::VectorXd s = score_batch(rm, triplets);
    Eigen::VectorXd o(s.size());
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      o[k] = oracle_reward(oracle, w, triplets[size_t(k)]);
      all_scores.push_back(s[k]);
      all_oracle.push_back(o[k]);
    }
    long concordant = 0, discordant = 0, total = 0;
    for (Eigen::Index a = 0; a < s.size(); ++a)
      for (Eigen::Index b = a + 1; b < s.size(); ++b) {
        const double prod = (s[a] - s[b]) * (o[a] - o[b]);
        concordant += prod > 0;
        discordant += prod < 0;
        ++total;
      }
    if (total > 0) {
      tau_sum += double(concordant - discordant) / double(total);
      ++tau_groups;
    }
  }
  report.kendall_tau = tau_groups == 0 ? 0.0 : tau_sum / double(tau_groups);

  const BucketTable table = quantize(all_scores);
  std::array<double, 5> sums{};
  std::array<long, 5> counts{};
  for (size_t i = 0; i < all_scores.size(); ++i) {
    const int b = bucket_of(table, all_scores[i]) - 1;
    sums[size_t(b)] += all_oracle[i];
    counts[size_t(b)] += 1;
  }
  for (int b = 0; b < 5; ++b)
    report.bucket_mean_oracle[size_t(b)] =
        counts[size_t(b)] == 0 ? 0.0 : sums[size_t(b)] / double(counts[size_t(b)]);
  return report;
}

BucketTable quantize(std::span<const double> scores) {
  if (scores.size() < 5)
    throw std::invalid_argument("quantize: need at least 5 scores");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());

  BucketTable table;
  const size_t n = sorted.size();
  for (size_t k = 1; k <= 4; ++k) {
    const size_t idx = (k * n + 4) / 5;  // ceil(k n / 5), integer-exact
    table.boundaries[k - 1] = sorted[idx - 1];
  }
  static const char* words[] = {"one", "two", "three", "four", "five"};
  for (int k = 0; k < 5; ++k)
    table.labels[size_t(k)] =
        std::string("quality ") + words[k] + " out of five";

  std::size_t distinct = 1;
  for (size_t i = 1; i < sorted.size(); ++i)
    distinct += sorted[i] != sorted[i - 1];
  table.degenerate = distinct < 5;
  return table;
}

int bucket_of(const BucketTable& table, double score) {
  for (int k = 0; k < 4; ++k)
    if (score <= table.boundaries[size_t(k)]) return k + 1;
  return 5;
}

}  // namespace editlab
