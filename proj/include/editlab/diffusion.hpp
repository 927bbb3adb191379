// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "editlab/numerics.hpp"
#include "editlab/rng.hpp"
#include "editlab/worlds.hpp"

namespace editlab {

/// Per-step constants of the forward noising process: beta_t rising linearly,
/// alpha_t = 1 - beta_t, alpha_bar_t their running product, sigma_t = sqrt(beta_t).
struct NoiseSchedule {
  int T = 0;
  double beta_start = 0.0;
  double beta_end = 0.0;
  Eigen::VectorXd beta;       // index t-1
  Eigen::VectorXd alpha;
  Eigen::VectorXd alpha_bar;
  Eigen::VectorXd sigma;

  static NoiseSchedule linear(int T = 100, double beta_start = 1e-3,
                              double beta_end = 0.2);
};

/// z_t = sqrt(alpha_bar_t) z + sqrt(1 - alpha_bar_t) eps, for t in 1..T.
Eigen::Vector2d forward_noise(const NoiseSchedule& s, const Eigen::Vector2d& z,
                              int t, const Eigen::Vector2d& eps);

/// Latent mapping between samples and diffusion space. Identity at this
/// scale: decode(encode(x)) == x exactly.
struct LatentCodec {
  Eigen::Vector2d encode(const Eigen::Vector2d& x) const { return x; }
  Eigen::Vector2d decode(const Eigen::Vector2d& z) const { return z; }
};

/// Conditioning for one record. nullopt marks a nulled slot (dropout during
/// training, the unconditioned branches during guided sampling).
struct Condition {
  std::optional<Eigen::Vector2d> input;        // original sample
  std::optional<EditInstruction> instruction;  // structured edit command
  std::optional<int> bucket;                   // reward bucket label, 1..5
};

struct DiffusionConfig {
  std::vector<int> hidden = {64, 64};
  Activation act = Activation::kTanh;
  int time_embed_dim = 16;   // sinusoidal
  int instr_embed_dim = 6;
  int bucket_embed_dim = 4;
  int param_dim = 2;         // instruction parameters, passed through raw
  double cond_dropout = 0.05;
  // 100-step compression of the reference 1000-step linear schedule: the
  // rates scale with 1/T so the terminal signal fraction alpha_bar_T stays
  // near zero and the chain can start from a standard normal.
  int schedule_steps = 100;
  double beta_start = 1e-3;
  double beta_end = 0.2;
};

/// Conditional noise-prediction model: an MLP trunk over
/// [z_t, time embedding, input slot, instruction slot, bucket slot], with
/// learned embedding tables and learned null vectors per slot.
struct DiffusionModel {
  DiffusionConfig cfg;
  NoiseSchedule schedule;
  LatentCodec codec;
  Mlp trunk;
  std::vector<std::pair<std::string, std::string>> vocab;  // (verb, object)
  Eigen::MatrixXd instr_embed;   // instr_embed_dim x vocab
  Eigen::VectorXd instr_null;    // instr_embed_dim + param_dim
  Eigen::VectorXd input_null;    // 2
  Eigen::MatrixXd bucket_embed;  // bucket_embed_dim x 5
  Eigen::VectorXd bucket_null;   // bucket_embed_dim
  bool conditions_on_bucket = false;  // set by condition-reward fine-tuning
};

DiffusionModel make_diffusion_model(
    const DiffusionConfig& cfg,
    std::vector<std::pair<std::string, std::string>> vocab, Rng& init_rng);

int model_input_dim(const DiffusionConfig& cfg);

/// Gather every trainable parameter (trunk + tables) into one flat vector.
ParameterVector pack_params(const DiffusionModel& m);
void unpack_params(DiffusionModel& m, const ParameterVector& pv);

/// Batched noise prediction; z_t is 2 x B, t has one entry per column.
Eigen::MatrixXd predict_noise(const DiffusionModel& m,
                              const Eigen::MatrixXd& z_t,
                              const Eigen::VectorXi& t,
                              const std::vector<Condition>& conds);

/// Gradient of sum_j <prediction_j, cotangent_j> w.r.t. the packed params.
ParameterVector predict_noise_backward(const DiffusionModel& m,
                                       const Eigen::MatrixXd& z_t,
                                       const Eigen::VectorXi& t,
                                       const std::vector<Condition>& conds,
                                       const Eigen::MatrixXd& cotangents);

// -- losses ------------------------------------------------------------------

/// Instructional denoising loss: mean over the batch of |eps - eps_hat|^2 at
/// uniform t, with independent condition dropout per slot. Deterministic for
/// a given rng value (the rng is taken by value so callers can replay it).
double sft_loss(const DiffusionModel& m, std::span<const Triplet> batch,
                Rng rng);
ParameterVector sft_loss_grad(const DiffusionModel& m,
                              std::span<const Triplet> batch, Rng rng,
                              double* value = nullptr);

/// Building block shared by the supervised and fine-tuning losses: optional
/// per-record weights (applied as given) and optional bucket labels 1..5.
/// All three losses draw identical streams from equal rng values.
double denoising_loss(const DiffusionModel& m, std::span<const Triplet> batch,
                      const Eigen::VectorXd* weights,
                      const std::vector<int>* buckets, Rng rng);
ParameterVector denoising_loss_grad(const DiffusionModel& m,
                                    std::span<const Triplet> batch,
                                    const Eigen::VectorXd* weights,
                                    const std::vector<int>* buckets, Rng rng,
                                    double* value = nullptr);

/// Same denoising objective evaluated against an arbitrary noise predictor;
/// the hook the stub-model tests use. Columns of the predictor arguments
/// follow batch order.
using NoisePredictor = std::function<Eigen::MatrixXd(
    const Eigen::MatrixXd& z_t, const Eigen::VectorXi& t,
    const std::vector<Condition>& conds)>;
double sft_loss_with(const NoiseSchedule& schedule, double cond_dropout,
                     const NoisePredictor& predictor,
                     std::span<const Triplet> batch, Rng rng);

// -- sampling ----------------------------------------------------------------

struct GuidanceScales {
  double image = 1.5;
  double instruction = 7.5;
};

/// Reverse-chain ancestral sampling, one column per requested condition.
/// The noise prediction is the two-scale combination
///   e(0,0) + s_I (e(cI,0) - e(0,0)) + s_E (e(cI,cE) - e(cI,0));
/// with both scales equal to 1 the fully conditioned prediction is used
/// directly. Column j draws its chain from rng.split(j). steps must equal
/// the model's schedule length.
Eigen::MatrixXd sample(const DiffusionModel& m,
                       const std::vector<Condition>& conds, GuidanceScales g,
                       int steps, Rng rng);

Eigen::Vector2d sample_one(const DiffusionModel& m, const Condition& cond,
                           GuidanceScales g, int steps, Rng rng);

/// Sampler against an arbitrary predictor (test hook).
Eigen::MatrixXd sample_with(const NoiseSchedule& schedule,
                            const NoisePredictor& predictor,
                            const std::vector<Condition>& conds,
                            GuidanceScales g, int steps, Rng rng);

// -- training ----------------------------------------------------------------

struct TrainOptions {
  int steps = 3000;
  int batch = 128;
  double lr = 1e-3;
  double holdout_fraction = 0.1;
  int eval_every = 250;
};

struct TrainReport {
  std::vector<std::pair<int, double>> train_curve;    // (step, batch loss)
  std::vector<std::pair<int, double>> holdout_curve;  // (step, holdout loss)
  double holdout_initial = 0.0;
  double holdout_final = 0.0;
};

/// Instructional supervised training. Throws TrainingDiverged when the loss
/// stops being finite.
TrainReport train_sft(DiffusionModel& m, const std::vector<Triplet>& data,
                      const TrainOptions& opts, Rng rng);

/// Shared minibatch loop: step_grad must fill a packed gradient and return
/// the batch loss; holdout_eval scores the held-out split on a fixed stream.
/// indices are the batch records' positions in the original dataset, for
/// losses that carry per-record metadata (scores, bucket labels).
using StepGradFn = std::function<double(const DiffusionModel&,
                                        std::span<const Triplet>,
                                        std::span<const std::size_t>, Rng,
                                        ParameterVector&)>;
using HoldoutFn = std::function<double(const DiffusionModel&,
                                       std::span<const Triplet>, Rng)>;
TrainReport train_loop(DiffusionModel& m, const std::vector<Triplet>& data,
                       const TrainOptions& opts, Rng rng,
                       const StepGradFn& step_grad,
                       const HoldoutFn& holdout_eval);

/// Build the triplet's condition (input + instruction, no bucket).
Condition condition_of(const Triplet& t);

}  // namespace editlab
