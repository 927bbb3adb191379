// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "editlab/rng.hpp"

namespace editlab {

/// Flat double-precision parameter storage with a named block layout.
///
/// Blocks are (name, rows, cols) views into one contiguous vector, so the
/// same object serves optimizer updates (flat) and layer math (shaped maps).
class ParameterVector {
 public:
  struct Block {
    std::string name;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    Eigen::Index offset = 0;
  };

  ParameterVector() = default;

  static ParameterVector zeros(
      const std::vector<std::tuple<std::string, Eigen::Index, Eigen::Index>>&
          spec);

  Eigen::Map<Eigen::MatrixXd> mat(std::string_view name);
  Eigen::Map<const Eigen::MatrixXd> mat(std::string_view name) const;
  Eigen::Map<Eigen::VectorXd> vec(std::string_view name);
  Eigen::Map<const Eigen::VectorXd> vec(std::string_view name) const;
  bool has(std::string_view name) const;

  Eigen::VectorXd& values() { return values_; }
  const Eigen::VectorXd& values() const { return values_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  Eigen::Index size() const { return values_.size(); }
  bool same_layout(const ParameterVector& other) const;
  bool all_finite() const { return values_.allFinite(); }

  /// Zero-valued clone with identical layout.
  ParameterVector zeros_like() const;

 private:
  const Block& find(std::string_view name) const;

  Eigen::VectorXd values_;
  std::vector<Block> blocks_;
};

enum class Activation { kTanh, kRelu };

std::string to_string(Activation a);
Activation activation_from_string(std::string_view s);

/// Fully connected network. Hidden layers use `act`, the output layer is
/// linear. Parameters live in `params` as blocks W0,b0,W1,b1,...
struct Mlp {
  std::vector<int> widths;  // [in, hidden..., out]
  Activation act = Activation::kTanh;
  ParameterVector params;
};

/// Glorot-uniform initialized network: weights in +/- sqrt(6/(fan_in+fan_out)).
Mlp make_mlp(std::vector<int> widths, Activation act, Rng& rng);

int mlp_input_width(const Mlp& net);
int mlp_output_width(const Mlp& net);

/// Batched forward pass; columns are independent inputs.
Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& inputs);
Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input);

struct MlpGradients {
  ParameterVector params;   // gradient of <outputs, cotangents> w.r.t. params
  Eigen::MatrixXd inputs;   // same w.r.t. the inputs, column per sample
};

/// Exact reverse-mode gradient of sum_j <output_j, cotangent_j>.
MlpGradients backward(const Mlp& net, const Eigen::MatrixXd& inputs,
                      const Eigen::MatrixXd& output_cotangents);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
};

/// One bias-corrected adaptive-moment update. State is lazily sized on the
/// first call. Throws TrainingDiverged on non-finite gradient entries.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad,
               AdamState& state, const AdamConfig& cfg);

/// Max relative error between `grad` and central finite differences of
/// `loss` at `point`. Coordinates where both derivatives are below 1e-7
/// in magnitude count as zero error.
double grad_check(const std::function<double(const Eigen::VectorXd&)>& loss,
                  const Eigen::VectorXd& grad, const Eigen::VectorXd& point,
                  double step = 1e-4);

}  // namespace editlab
