// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "editlab/rng.hpp"

namespace editlab {

/// Explicit probability vector over a finite support. Entries must be
/// nonnegative and sum to one within 1e-12.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(Eigen::VectorXd probabilities);

  /// Normalize a vector of nonnegative masses.
  static DiscreteDistribution from_unnormalized(const Eigen::VectorXd& mass);
  static DiscreteDistribution uniform(Eigen::Index n);

  const Eigen::VectorXd& probs() const { return p_; }
  double operator[](Eigen::Index i) const { return p_[i]; }
  Eigen::Index size() const { return p_.size(); }

  /// One draw by inverse-CDF walk.
  Eigen::Index sample(Rng& rng) const;

 private:
  Eigen::VectorXd p_;
};

double total_variation(const DiscreteDistribution& a,
                       const DiscreteDistribution& b);

/// KL(p || q) = sum_i p_i ln(p_i/q_i), with 0 ln 0 = 0. Throws when p puts
/// mass where q has none.
double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q);

/// Value of the KL-regularized reward objective
///   J(rho) = E_rho[R] - eta * KL(rho || p).
/// rho must be absolutely continuous w.r.t. p.
double objective_value(const DiscreteDistribution& rho,
                       const DiscreteDistribution& p,
                       const Eigen::VectorXd& reward, double eta);

struct TiltResult {
  DiscreteDistribution rho_star;
  double partition;  // Z = sum_i p_i exp(R_i/eta)
};

/// Closed-form maximizer of the objective: rho*_i = p_i exp(R_i/eta) / Z.
/// Computed with max-subtraction so large R/eta cannot overflow the weights.
TiltResult tilt(const DiscreteDistribution& p, const Eigen::VectorXd& reward,
                double eta);

/// Maximize the objective directly by exponentiated-gradient ascent on the
/// probability simplex, without using the closed form. Converges geometrically
/// for this concave objective; throws ConvergenceError if the iterate is
/// still moving after max_iterations.
DiscreteDistribution maximize_objective(const DiscreteDistribution& p,
                                        const Eigen::VectorXd& reward,
                                        double eta, int max_iterations = 20000);

/// Check the reward-as-conditioning route: with p(R*=1|x) proportional to
/// exp(R_x), form p(x)^(1-1/eta) * p(x|R*=1)^(1/eta), normalize, and return
/// its total-variation distance from the closed-form tilt. Zero up to
/// rounding when the derivation holds.
double verify_reward_conditioning_identity(const DiscreteDistribution& p,
                                           const Eigen::VectorXd& reward,
                                           double eta);

}  // namespace editlab
