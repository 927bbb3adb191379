// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "editlab/errors.hpp"

namespace editlab {

ParameterVector ParameterVector::zeros(
    const std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>>&
        spec) {
  ParameterVector pv;
  Eigen::Index total = 0;
  for (const auto& [name, rows, cols] : spec) {
    if (rows <= 0 || cols <= 0)
      throw std::invalid_argument("parameter block '" + name +
                                  "' has non-positive shape");
    pv.blocks_.push_back({name, rows, cols, total});
    total += rows * cols;
  }
  pv.values_ = Eigen::VectorXd::Zero(total);
  return pv;
}

const ParameterVector::Block& ParameterVector::find(
    std::string_view name) const {
  for (const Block& b : blocks_)
    if (b.name == name) return b;
  throw std::invalid_argument("unknown parameter block '" + std::string(name) +
                              "'");
}

bool ParameterVector::has(std::string_view name) const {
  for (const Block& b : blocks_)
    if (b.name == name) return true;
  return false;
}

Eigen::Map<Eigen::MatrixXd> ParameterVector::mat(std::string_view name) {
  const Block& b = find(name);
  return {values_.data() + b.offset, b.rows, b.cols};
}

Eigen::Map<const Eigen::MatrixXd> ParameterVector::mat(
    std::string_view name) const {
  const Block& b = find(name);
  return {values_.data() + b.offset, b.rows, b.cols};
}

Eigen::Map<Eigen::VectorXd> ParameterVector::vec(std::string_view name) {
  const Block& b = find(name);
  return {values_.data() + b.offset, b.rows * b.cols};
}

Eigen::Map<const Eigen::VectorXd> ParameterVector::vec(
    std::string_view name) const {
  const Block& b = find(name);
  return {values_.data() + b.offset, b.rows * b.cols};
}

bool ParameterVector::same_layout(const ParameterVector& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Block& a = blocks_[i];
    const Block& b = other.blocks_[i];
    if (a.name != b.name || a.rows != b.rows || a.cols != b.cols) return false;
  }
  return true;
}

ParameterVector ParameterVector::zeros_like() const {
  ParameterVector pv = *this;
  pv.values_.setZero();
  return pv;
}

std::string to_string(Activation a) {
  return a == Activation::kTanh ? "tanh" : "relu";
}

Activation activation_from_string(std::string_view s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "relu") return Activation::kRelu;
  throw std::invalid_argument("unknown activation '" + std::string(s) + "'");
}

Mlp make_mlp(std::vector<int> widths, Activation act, Rng& rng) {
  if (widths.size() < 2)
    throw std::invalid_argument("mlp needs at least input and output widths");
  for (int w : widths)
    if (w <= 0) throw std::invalid_argument("mlp widths must be positive");

  std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>> spec;
  const size_t layers = widths.size() - 1;
  for (size_t l = 0; l < layers; ++l) {
    spec.emplace_back("W" + std::to_string(l), widths[l + 1], widths[l]);
    spec.emplace_back("b" + std::to_string(l), widths[l + 1], 1);
  }

  Mlp net{std::move(widths), act, ParameterVector::zeros(spec)};
  for (size_t l = 0; l < layers; ++l) {
    const int fan_in = net.widths[l];
    const int fan_out = net.widths[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    auto W = net.params.mat("W" + std::to_string(l));
    for (Eigen::Index c = 0; c < W.cols(); ++c)
      for (Eigen::Index r = 0; r < W.rows(); ++r)
        W(r, c) = rng.uniform(-bound, bound);
    // biases start at zero
  }
  return net;
}

int mlp_input_width(const Mlp& net) { return net.widths.front(); }
int mlp_output_width(const Mlp& net) { return net.widths.back(); }

namespace {

void apply_activation(Eigen::MatrixXd& m, Activation act) {
  if (act == Activation::kTanh)
    m = m.array().tanh();
  else
    m = m.cwiseMax(0.0);
}

}  // namespace

Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& inputs) {
  if (inputs.rows() != mlp_input_width(net))
    throw std::invalid_argument("mlp forward: input has " +
                                std::to_string(inputs.rows()) +
                                " rows, expected " +
                                std::to_string(mlp_input_width(net)));
  const size_t layers = net.widths.size() - 1;
  Eigen::MatrixXd h = inputs;
  for (size_t l = 0; l < layers; ++l) {
    auto W = net.params.mat("W" + std::to_string(l));
    auto b = net.params.vec("b" + std::to_string(l));
    h = (W * h).colwise() + b;
    if (l + 1 < layers) apply_activation(h, net.act);
  }
  return h;
}

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input) {
  return forward(net, Eigen::MatrixXd(input)).col(0);
}

MlpGradients backward(const Mlp& net, const Eigen::MatrixXd& inputs,
                      const Eigen::MatrixXd& output_cotangents) {
  if (inputs.rows() != mlp_input_width(net))
    throw std::invalid_argument("mlp backward: bad input width");
  if (output_cotangents.rows() != mlp_output_width(net) ||
      output_cotangents.cols() != inputs.cols())
    throw std::invalid_argument("mlp backward: cotangent shape mismatch");

  const size_t layers = net.widths.size() - 1;

  // Forward pass, keeping post-activation values per layer.
  std::vector<Eigen::MatrixXd> h(layers + 1);
  h[0] = inputs;
  for (size_t l = 0; l < layers; ++l) {
    auto W = net.params.mat("W" + std::to_string(l));
    auto b = net.params.vec("b" + std::to_string(l));
    h[l + 1] = (W * h[l]).colwise() + b;
    if (l + 1 < layers) apply_activation(h[l + 1], net.act);
  }

  MlpGradients grads{net.params.zeros_like(), Eigen::MatrixXd()};
  Eigen::MatrixXd delta = output_cotangents;
  for (size_t l = layers; l-- > 0;) {
    grads.params.mat("W" + std::to_string(l)).noalias() =
        delta * h[l].transpose();
    grads.params.vec("b" + std::to_string(l)) = delta.rowwise().sum();
    auto W = net.params.mat("W" + std::to_string(l));
    Eigen::MatrixXd prev = W.transpose() * delta;
    if (l > 0) {
      if (net.act == Activation::kTanh)
        prev.array() *= 1.0 - h[l].array().square();
      else
        prev.array() *= (h[l].array() > 0.0).cast<double>();
    }
    delta = std::move(prev);
  }
  grads.inputs = std::move(delta);
  return grads;
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad,
               AdamState& state, const AdamConfig& cfg) {
  if (grad.size() != params.size())
    throw std::invalid_argument("adam_step: size mismatch");
  if (!grad.allFinite())
    throw TrainingDiverged("adam_step: non-finite gradient");

  if (state.m.size() != params.size()) {
    state.m = Eigen::VectorXd::Zero(params.size());
    state.v = Eigen::VectorXd::Zero(params.size());
    state.step = 0;
  }
  ++state.step;
  state.m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grad;
  state.v = cfg.beta2 * state.v +
            (1.0 - cfg.beta2) * grad.array().square().matrix();
  const double c1 = 1.0 - std::pow(cfg.beta1, double(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, double(state.step));
  params.array() -= cfg.lr * (state.m.array() / c1) /
                    ((state.v.array() / c2).sqrt() + cfg.eps);
}

double grad_check(const std::function<double(const Eigen::VectorXd&)>& loss,
                  const Eigen::VectorXd& grad, const Eigen::VectorXd& point,
                  double step) {
  if (!std::isfinite(loss(point)))
    throw std::invalid_argument("grad_check: loss not finite at point");
  double worst = 0.0;
  Eigen::VectorXd p = point;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + step;
    const double up = loss(p);
    p[i] = saved - step;
    const double down = loss(p);
    p[i] = saved;
    const double fd = (up - down) / (2.0 * step);
    const double ad = grad[i];
    const double scale = std::max(std::abs(fd), std::abs(ad));
    if (scale < 1e-7) continue;
    worst = std::max(worst, std::abs(fd - ad) / std::max(scale, 1e-2));
  }
  return worst;
}

}  // namespace editlab
