// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/diffusion.hpp"

#include <cmath>
#include <stdexcept>

#include "editlab/errors.hpp"

namespace editlab {

NoiseSchedule NoiseSchedule::linear(int T, double beta_start, double beta_end) {
  if (T < 1) throw std::invalid_argument("schedule needs T >= 1");
  if (!(beta_start > 0.0) || !(beta_end < 1.0) || beta_start > beta_end)
    throw std::invalid_argument("schedule needs 0 < beta_1 <= beta_T < 1");
  NoiseSchedule s;
  s.T = T;
  s.beta_start = beta_start;
  s.beta_end = beta_end;
  s.beta = Eigen::VectorXd::LinSpaced(T, beta_start, beta_end);
  if (T == 1) s.beta[0] = beta_start;
  s.alpha = 1.0 - s.beta.array();
  s.alpha_bar.resize(T);
  double prod = 1.0;
  for (int t = 0; t < T; ++t) {
    prod *= s.alpha[t];
    s.alpha_bar[t] = prod;
  }
  s.sigma = s.beta.array().sqrt();
  return s;
}

Eigen::Vector2d forward_noise(const NoiseSchedule& s, const Eigen::Vector2d& z,
                              int t, const Eigen::Vector2d& eps) {
  if (t < 1 || t > s.T)
    throw std::invalid_argument("forward_noise: t out of range");
  const double ab = s.alpha_bar[t - 1];
  return std::sqrt(ab) * z + std::sqrt(1.0 - ab) * eps;
}

int model_input_dim(const DiffusionConfig& cfg) {
  return 2 + cfg.time_embed_dim + 2 + cfg.instr_embed_dim + cfg.param_dim +
         cfg.bucket_embed_dim;
}

namespace {

constexpr int kBuckets = 5;

void fill_uniform(Eigen::Ref<Eigen::MatrixXd> m, double bound, Rng& rng) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      m(r, c) = rng.uniform(-bound, bound);
}

}  // namespace

DiffusionModel make_diffusion_model(
    const DiffusionConfig& cfg,
    std::vector<std::pair<std::string, std::string>> vocab, Rng& init_rng) {
  if (vocab.empty()) throw std::invalid_argument("empty instruction vocab");
  DiffusionModel m;
  m.cfg = cfg;
  m.schedule =
      NoiseSchedule::linear(cfg.schedule_steps, cfg.beta_start, cfg.beta_end);
  m.vocab = std::move(vocab);

  std::vector<int> widths;
  widths.push_back(model_input_dim(cfg));
  for (int h : cfg.hidden) widths.push_back(h);
  widths.push_back(2);
  m.trunk = make_mlp(widths, cfg.act, init_rng);

  const double eb = std::sqrt(6.0 / double(cfg.instr_embed_dim +
                                           Eigen::Index(m.vocab.size())));
  m.instr_embed.resize(cfg.instr_embed_dim, Eigen::Index(m.vocab.size()));
  fill_uniform(m.instr_embed, eb, init_rng);
  m.instr_null.resize(cfg.instr_embed_dim + cfg.param_dim);
  fill_uniform(m.instr_null, 0.3, init_rng);
  m.input_null.resize(2);
  fill_uniform(m.input_null, 0.3, init_rng);
  m.bucket_embed.resize(cfg.bucket_embed_dim, kBuckets);
  fill_uniform(m.bucket_embed, 0.3, init_rng);
  m.bucket_null.resize(cfg.bucket_embed_dim);
  fill_uniform(m.bucket_null, 0.3, init_rng);
  return m;
}

ParameterVector pack_params(const DiffusionModel& m) {
  std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>> spec;
  for (const auto& b : m.trunk.params.blocks())
    spec.emplace_back("trunk." + b.name, b.rows, b.cols);
  spec.emplace_back("instr_embed", m.instr_embed.rows(), m.instr_embed.cols());
  spec.emplace_back("instr_null", m.instr_null.size(), 1);
  spec.emplace_back("input_null", m.input_null.size(), 1);
  spec.emplace_back("bucket_embed", m.bucket_embed.rows(),
                    m.bucket_embed.cols());
  spec.emplace_back("bucket_null", m.bucket_null.size(), 1);

  ParameterVector pv = ParameterVector::zeros(spec);
  for (const auto& b : m.trunk.params.blocks())
    pv.mat("trunk." + b.name) = m.trunk.params.mat(b.name);
  pv.mat("instr_embed") = m.instr_embed;
  pv.vec("instr_null") = m.instr_null;
  pv.vec("input_null") = m.input_null;
  pv.mat("bucket_embed") = m.bucket_embed;
  pv.vec("bucket_null") = m.bucket_null;
  return pv;
}

void unpack_params(DiffusionModel& m, const ParameterVector& pv) {
  for (const auto& b : m.trunk.params.blocks())
    m.trunk.params.mat(b.name) = pv.mat("trunk." + b.name);
  m.instr_embed = pv.mat("instr_embed");
  m.instr_null = pv.vec("instr_null");
  m.input_null = pv.vec("input_null");
  m.bucket_embed = pv.mat("bucket_embed");
  m.bucket_null = pv.vec("bucket_null");
}

namespace {

struct ResolvedCondition {
  bool has_input = false;
  Eigen::Vector2d input{0.0, 0.0};
  int instr_row = -1;  // -1 means nulled
  Eigen::Vector2d params{0.0, 0.0};
  int bucket = 0;  // 0 means nulled
};

int vocab_row(const DiffusionModel& m, const EditInstruction& instr) {
  for (size_t i = 0; i < m.vocab.size(); ++i)
    if (m.vocab[i].first == instr.verb && m.vocab[i].second == instr.object)
      return int(i);
  throw UnsupportedInstruction("instruction (" + instr.verb + ", " +
                               instr.object + ") not in the model vocabulary");
}

ResolvedCondition resolve(const DiffusionModel& m, const Condition& c) {
  ResolvedCondition r;
  if (c.input) {
    r.has_input = true;
    r.input = *c.input;
  }
  if (c.instruction) {
    r.instr_row = vocab_row(m, *c.instruction);
    r.params = c.instruction->params;
  }
  if (c.bucket) {
    if (*c.bucket < 1 || *c.bucket > kBuckets)
      throw std::invalid_argument("bucket label out of range");
    r.bucket = *c.bucket;
  }
  return r;
}

void time_embedding(const DiffusionConfig& cfg, int t,
                    Eigen::Ref<Eigen::VectorXd> out) {
  const int half = cfg.time_embed_dim / 2;
  for (int k = 0; k < half; ++k) {
    const double freq =
        std::exp(-std::log(10000.0) * double(k) / double(half));
    out[2 * k] = std::sin(double(t) * freq);
    out[2 * k + 1] = std::cos(double(t) * freq);
  }
}

Eigen::MatrixXd assemble_inputs(const DiffusionModel& m,
                                const Eigen::MatrixXd& z_t,
                                const Eigen::VectorXi& t,
                                const std::vector<ResolvedCondition>& conds) {
  const auto& cfg = m.cfg;
  const Eigen::Index B = z_t.cols();
  if (t.size() != B || Eigen::Index(conds.size()) != B)
    throw std::invalid_argument("predict_noise: batch size mismatch");

  Eigen::MatrixXd X(model_input_dim(cfg), B);
  const int off_time = 2;
  const int off_input = off_time + cfg.time_embed_dim;
  const int off_instr = off_input + 2;
  const int off_bucket = off_instr + cfg.instr_embed_dim + cfg.param_dim;

  for (Eigen::Index j = 0; j < B; ++j) {
    const ResolvedCondition& c = conds[size_t(j)];
    X.col(j).segment(0, 2) = z_t.col(j);
    time_embedding(cfg, t[j], X.col(j).segment(off_time, cfg.time_embed_dim));
    if (c.has_input)
      X.col(j).segment(off_input, 2) = c.input;
    else
      X.col(j).segment(off_input, 2) = m.input_null;
    if (c.instr_row >= 0) {
      X.col(j).segment(off_instr, cfg.instr_embed_dim) =
          m.instr_embed.col(c.instr_row);
      X.col(j).segment(off_instr + cfg.instr_embed_dim, cfg.param_dim) =
          c.params.head(cfg.param_dim);
    } else {
      X.col(j).segment(off_instr, cfg.instr_embed_dim + cfg.param_dim) =
          m.instr_null;
    }
    X.col(j).segment(off_bucket, cfg.bucket_embed_dim) =
        c.bucket > 0 ? m.bucket_embed.col(c.bucket - 1) : m.bucket_null;
  }
  return X;
}

std::vector<ResolvedCondition> resolve_all(const DiffusionModel& m,
                                           const std::vector<Condition>& cs) {
  std::vector<ResolvedCondition> out;
  out.reserve(cs.size());
  for (const Condition& c : cs) out.push_back(resolve(m, c));
  return out;
}

Eigen::MatrixXd predict_resolved(const DiffusionModel& m,
                                 const Eigen::MatrixXd& z_t,
                                 const Eigen::VectorXi& t,
                                 const std::vector<ResolvedCondition>& conds) {
  return forward(m.trunk, assemble_inputs(m, z_t, t, conds));
}

}  // namespace

Eigen::MatrixXd predict_noise(const DiffusionModel& m,
                              const Eigen::MatrixXd& z_t,
                              const Eigen::VectorXi& t,
                              const std::vector<Condition>& conds) {
  return predict_resolved(m, z_t, t, resolve_all(m, conds));
}

ParameterVector predict_noise_backward(const DiffusionModel& m,
                                       const Eigen::MatrixXd& z_t,
                                       const Eigen::VectorXi& t,
                                       const std::vector<Condition>& conds,
                                       const Eigen::MatrixXd& cotangents) {
  const std::vector<ResolvedCondition> res = resolve_all(m, conds);
  const Eigen::MatrixXd X = assemble_inputs(m, z_t, t, res);
  const MlpGradients g = backward(m.trunk, X, cotangents);

  ParameterVector pv = pack_params(m).zeros_like();
  for (const auto& b : m.trunk.params.blocks())
    pv.mat("trunk." + b.name) = g.params.mat(b.name);

  const auto& cfg = m.cfg;
  const int off_input = 2 + cfg.time_embed_dim;
  const int off_instr = off_input + 2;
  const int off_bucket = off_instr + cfg.instr_embed_dim + cfg.param_dim;

  auto instr_embed_grad = pv.mat("instr_embed");
  auto instr_null_grad = pv.vec("instr_null");
  auto input_null_grad = pv.vec("input_null");
  auto bucket_embed_grad = pv.mat("bucket_embed");
  auto bucket_null_grad = pv.vec("bucket_null");

  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const ResolvedCondition& c = res[size_t(j)];
    if (!c.has_input)
      input_null_grad += g.inputs.col(j).segment(off_input, 2);
    if (c.instr_row >= 0) {
      instr_embed_grad.col(c.instr_row) +=
          g.inputs.col(j).segment(off_instr, cfg.instr_embed_dim);
      // parameter passthrough rows are data, not parameters
    } else {
      instr_null_grad += g.inputs.col(j).segment(
          off_instr, cfg.instr_embed_dim + cfg.param_dim);
    }
    if (c.bucket > 0)
      bucket_embed_grad.col(c.bucket - 1) +=
          g.inputs.col(j).segment(off_bucket, cfg.bucket_embed_dim);
    else
      bucket_null_grad += g.inputs.col(j).segment(off_bucket,
                                                  cfg.bucket_embed_dim);
  }
  return pv;
}

Condition condition_of(const Triplet& t) {
  Condition c;
  c.input = t.input.coords;
  c.instruction = t.instruction;
  return c;
}

namespace {

struct DrawnBatch {
  Eigen::MatrixXd z_t;    // 2 x B
  Eigen::MatrixXd eps;    // 2 x B
  Eigen::VectorXi t;      // B
  std::vector<Condition> conds;
};

/// Per record, in order: t, eps (2 normals), then one dropout coin per
/// condition slot. The bucket coin is drawn even without bucket labels so
/// the supervised and fine-tuning losses consume identical streams.
DrawnBatch draw_batch(const NoiseSchedule& schedule, double cond_dropout,
                      std::span<const Triplet> batch,
                      const std::vector<int>* buckets, Rng& rng) {
  const Eigen::Index B = Eigen::Index(batch.size());
  DrawnBatch d;
  d.z_t.resize(2, B);
  d.eps.resize(2, B);
  d.t.resize(B);
  d.conds.resize(size_t(B));
  LatentCodec codec;
  for (Eigen::Index j = 0; j < B; ++j) {
    const Triplet& rec = batch[size_t(j)];
    const int t = 1 + int(rng.uniform_int(std::uint64_t(schedule.T)));
    const Eigen::Vector2d eps(rng.normal(), rng.normal());
    const bool drop_input = rng.uniform() < cond_dropout;
    const bool drop_instr = rng.uniform() < cond_dropout;
    const bool drop_bucket = rng.uniform() < cond_dropout;

    d.t[j] = t;
    d.eps.col(j) = eps;
    d.z_t.col(j) = forward_noise(schedule, codec.encode(rec.edited.coords), t,
                                 eps);
    Condition& c = d.conds[size_t(j)];
    if (!drop_input) c.input = rec.input.coords;
    if (!drop_instr) c.instruction = rec.instruction;
    if (buckets && !drop_bucket) c.bucket = (*buckets)[size_t(j)];
  }
  return d;
}

}  // namespace

double denoising_loss(const DiffusionModel& m, std::span<const Triplet> batch,
                      const Eigen::VectorXd* weights,
                      const std::vector<int>* buckets, Rng rng) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  DrawnBatch d = draw_batch(m.schedule, m.cfg.cond_dropout, batch, buckets,
                            rng);
  const Eigen::MatrixXd pred =
      predict_resolved(m, d.z_t, d.t, resolve_all(m, d.conds));
  const Eigen::ArrayXd sq =
      (pred - d.eps).array().square().colwise().sum().transpose();
  const Eigen::Index B = Eigen::Index(batch.size());
  if (!weights) return sq.sum() / double(B);
  return (sq * weights->array()).sum() / double(B);
}

ParameterVector denoising_loss_grad(const DiffusionModel& m,
                                    std::span<const Triplet> batch,
                                    const Eigen::VectorXd* weights,
                                    const std::vector<int>* buckets, Rng rng,
                                    double* value) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  DrawnBatch d = draw_batch(m.schedule, m.cfg.cond_dropout, batch, buckets,
                            rng);
  const std::vector<ResolvedCondition> res = resolve_all(m, d.conds);
  const Eigen::MatrixXd X = assemble_inputs(m, d.z_t, d.t, res);
  const Eigen::MatrixXd pred = forward(m.trunk, X);

  const Eigen::Index B = Eigen::Index(batch.size());
  Eigen::MatrixXd residual = pred - d.eps;
  const Eigen::ArrayXd sq =
      residual.array().square().colwise().sum().transpose();
  double loss;
  Eigen::MatrixXd cot;
  if (!weights) {
    loss = sq.sum() / double(B);
    cot = (2.0 / double(B)) * residual;
  } else {
    loss = (sq * weights->array()).sum() / double(B);
    cot = (2.0 / double(B)) *
          (residual.array().rowwise() * weights->transpose().array()).matrix();
  }
  if (value) *value = loss;

  // inline predict_noise_backward on the already-assembled inputs
  const MlpGradients g = backward(m.trunk, X, cot);
  ParameterVector pv = pack_params(m).zeros_like();
  for (const auto& b : m.trunk.params.blocks())
    pv.mat("trunk." + b.name) = g.params.mat(b.name);
  const auto& cfg = m.cfg;
  const int off_input = 2 + cfg.time_embed_dim;
  const int off_instr = off_input + 2;
  const int off_bucket = off_instr + cfg.instr_embed_dim + cfg.param_dim;
  auto instr_embed_grad = pv.mat("instr_embed");
  auto instr_null_grad = pv.vec("instr_null");
  auto input_null_grad = pv.vec("input_null");
  auto bucket_embed_grad = pv.mat("bucket_embed");
  auto bucket_null_grad = pv.vec("bucket_null");
  for (Eigen::Index j = 0; j < B; ++j) {
    const ResolvedCondition& c = res[size_t(j)];
    if (!c.has_input)
      input_null_grad += g.inputs.col(j).segment(off_input, 2);
    if (c.instr_row >= 0) {
      instr_embed_grad.col(c.instr_row) +=
          g.inputs.col(j).segment(off_instr, cfg.instr_embed_dim);
    } else {
      instr_null_grad += g.inputs.col(j).segment(
          off_instr, cfg.instr_embed_dim + cfg.param_dim);
    }
    if (c.bucket > 0)
      bucket_embed_grad.col(c.bucket - 1) +=
          g.inputs.col(j).segment(off_bucket, cfg.bucket_embed_dim);
    else
      bucket_null_grad += g.inputs.col(j).segment(off_bucket,
                                                  cfg.bucket_embed_dim);
  }
  return pv;
}

double sft_loss(const DiffusionModel& m, std::span<const Triplet> batch,
                Rng rng) {
  return denoising_loss(m, batch, nullptr, nullptr, rng);
}

ParameterVector sft_loss_grad(const DiffusionModel& m,
                              std::span<const Triplet> batch, Rng rng,
                              double* value) {
  return denoising_loss_grad(m, batch, nullptr, nullptr, rng, value);
}

double sft_loss_with(const NoiseSchedule& schedule, double cond_dropout,
                     const NoisePredictor& predictor,
                     std::span<const Triplet> batch, Rng rng) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  DrawnBatch d = draw_batch(schedule, cond_dropout, batch, nullptr, rng);
  const Eigen::MatrixXd pred = predictor(d.z_t, d.t, d.conds);
  return (pred - d.eps).array().square().colwise().sum().mean();
}

namespace {

Eigen::MatrixXd run_chain(
    const NoiseSchedule& s, const std::vector<Condition>& conds,
    GuidanceScales g, int steps, Rng& rng,
    const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, int)>&
        guided_eps) {
  if (steps != s.T)
    throw std::invalid_argument(
        "sample: steps must match the schedule length (fast samplers are out "
        "of scope)");
  if (g.image < 0.0 || g.instruction < 0.0)
    throw std::invalid_argument("guidance scales must be nonnegative");

  const Eigen::Index B = Eigen::Index(conds.size());
  std::vector<Rng> streams;
  streams.reserve(size_t(B));
  for (Eigen::Index j = 0; j < B; ++j)
    streams.push_back(rng.split(std::uint64_t(j)));

  Eigen::MatrixXd z(2, B);
  for (Eigen::Index j = 0; j < B; ++j)
    z.col(j) = Eigen::Vector2d(streams[size_t(j)].normal(),
                               streams[size_t(j)].normal());

  for (int t = s.T; t >= 1; --t) {
    const Eigen::MatrixXd eps = guided_eps(z, t);
    const double a = s.alpha[t - 1];
    const double ab = s.alpha_bar[t - 1];
    z = (z - ((1.0 - a) / std::sqrt(1.0 - ab)) * eps) / std::sqrt(a);
    for (Eigen::Index j = 0; j < B; ++j)
      z.col(j) += s.sigma[t - 1] *
                  Eigen::Vector2d(streams[size_t(j)].normal(),
                                  streams[size_t(j)].normal());
  }
  return z;
}

}  // namespace

Eigen::MatrixXd sample(const DiffusionModel& m,
                       const std::vector<Condition>& conds, GuidanceScales g,
                       int steps, Rng rng) {
  const Eigen::Index B = Eigen::Index(conds.size());
  const std::vector<ResolvedCondition> full = resolve_all(m, conds);
  std::vector<ResolvedCondition> image_only = full;
  std::vector<ResolvedCondition> none(full.size());
  for (auto& c : image_only) {
    c.instr_row = -1;
    c.params.setZero();
    c.bucket = 0;
  }

  const bool plain = g.image == 1.0 && g.instruction == 1.0;
  Eigen::VectorXi tvec(B);
  auto guided = [&](const Eigen::MatrixXd& z, int t) -> Eigen::MatrixXd {
    tvec.setConstant(t);
    if (plain) return predict_resolved(m, z, tvec, full);
    const Eigen::MatrixXd e0 = predict_resolved(m, z, tvec, none);
    const Eigen::MatrixXd ei = predict_resolved(m, z, tvec, image_only);
    const Eigen::MatrixXd ef = predict_resolved(m, z, tvec, full);
    return e0 + g.image * (ei - e0) + g.instruction * (ef - ei);
  };

  Eigen::MatrixXd z = run_chain(m.schedule, conds, g, steps, rng, guided);
  for (Eigen::Index j = 0; j < B; ++j)
    z.col(j) = m.codec.decode(z.col(j));
  return z;
}

Eigen::Vector2d sample_one(const DiffusionModel& m, const Condition& cond,
                           GuidanceScales g, int steps, Rng rng) {
  return sample(m, std::vector<Condition>{cond}, g, steps, rng).col(0);
}

Eigen::MatrixXd sample_with(const NoiseSchedule& schedule,
                            const NoisePredictor& predictor,
                            const std::vector<Condition>& conds,
                            GuidanceScales g, int steps, Rng rng) {
  if (!(g.image == 1.0 && g.instruction == 1.0))
    throw std::invalid_argument(
        "sample_with supports unit guidance only; use sample() for guided "
        "chains");
  const Eigen::Index B = Eigen::Index(conds.size());
  Eigen::VectorXi tvec(B);
  auto guided = [&](const Eigen::MatrixXd& z, int t) {
    tvec.setConstant(t);
    return predictor(z, tvec, conds);
  };
  return run_chain(schedule, conds, g, steps, rng, guided);
}

TrainReport train_loop(DiffusionModel& m, const std::vector<Triplet>& data,
                       const TrainOptions& opts, Rng rng,
                       const StepGradFn& step_grad,
                       const HoldoutFn& holdout_eval) {
  if (data.empty()) throw std::invalid_argument("train_loop: empty dataset");
  if (opts.batch < 1 || opts.steps < 1)
    throw std::invalid_argument("train_loop: bad options");

  // deterministic split by record index
  std::vector<Triplet> train, holdout;
  std::vector<std::size_t> train_index;
  const int every =
      opts.holdout_fraction > 0.0
          ? std::max(2, int(std::lround(1.0 / opts.holdout_fraction)))
          : 0;
  for (size_t i = 0; i < data.size(); ++i) {
    if (every > 0 && i % size_t(every) == 0) {
      holdout.push_back(data[i]);
    } else {
      train.push_back(data[i]);
      train_index.push_back(i);
    }
  }
  if (train.empty()) {
    train = data;
    train_index.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i) train_index[i] = i;
  }
  if (holdout.empty()) holdout = {data.front()};

  ParameterVector params = pack_params(m);
  AdamState adam;
  AdamConfig adam_cfg;
  adam_cfg.lr = opts.lr;

  TrainReport report;
  const Rng holdout_rng = rng.split("holdout-eval");
  report.holdout_initial = holdout_eval(m, holdout, holdout_rng);
  report.holdout_curve.emplace_back(0, report.holdout_initial);

  std::vector<Triplet> batch(size_t(opts.batch));
  std::vector<std::size_t> batch_index(size_t(opts.batch));
  ParameterVector grad = params.zeros_like();
  for (int step = 1; step <= opts.steps; ++step) {
    Rng step_rng = rng.split(std::uint64_t(step));
    for (int j = 0; j < opts.batch; ++j) {
      const std::uint64_t pick = step_rng.uniform_int(train.size());
      batch[size_t(j)] = train[pick];
      batch_index[size_t(j)] = train_index[size_t(pick)];
    }

    const double loss = step_grad(m, batch, batch_index, step_rng, grad);
    if (!std::isfinite(loss))
      throw TrainingDiverged("training loss became non-finite at step " +
                             std::to_string(step));
    // linear warmdown to a tenth of the base rate
    adam_cfg.lr = opts.lr * (1.0 - 0.9 * double(step - 1) /
                                       double(std::max(1, opts.steps - 1)));
    adam_step(params.values(), grad.values(), adam, adam_cfg);
    unpack_params(m, params);

    if (step % std::max(1, opts.eval_every) == 0 || step == opts.steps) {
      report.train_curve.emplace_back(step, loss);
      report.holdout_curve.emplace_back(step,
                                        holdout_eval(m, holdout, holdout_rng));
    }
  }
  report.holdout_final = report.holdout_curve.back().second;
  return report;
}

TrainReport train_sft(DiffusionModel& m, const std::vector<Triplet>& data,
                      const TrainOptions& opts, Rng rng) {
  auto step = [](const DiffusionModel& model, std::span<const Triplet> batch,
                 std::span<const std::size_t>, Rng r, ParameterVector& grad) {
    double value = 0.0;
    grad = sft_loss_grad(model, batch, r, &value);
    return value;
  };
  auto eval = [](const DiffusionModel& model, std::span<const Triplet> batch,
                 Rng r) { return sft_loss(model, batch, r); };
  return train_loop(m, data, opts, rng, step, eval);
}

}  // namespace editlab
