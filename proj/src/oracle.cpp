// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "editlab/errors.hpp"

namespace editlab {

DiscreteDistribution::DiscreteDistribution(Eigen::VectorXd probabilities)
    : p_(std::move(probabilities)) {
  if (p_.size() == 0)
    throw std::invalid_argument("distribution needs a nonempty support");
  if ((p_.array() < 0.0).any())
    throw std::invalid_argument("distribution has negative entries");
  if (std::abs(p_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("distribution does not sum to 1");
}

DiscreteDistribution DiscreteDistribution::from_unnormalized(
    const Eigen::VectorXd& mass) {
  const double total = mass.sum();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::invalid_argument("cannot normalize: total mass " +
                                std::to_string(total));
  return DiscreteDistribution(mass / total);
}

DiscreteDistribution DiscreteDistribution::uniform(Eigen::Index n) {
  return DiscreteDistribution(Eigen::VectorXd::Constant(n, 1.0 / double(n)));
}

Eigen::Index DiscreteDistribution::sample(Rng& rng) const {
  const double u = rng.uniform();
  double cum = 0.0;
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    cum += p_[i];
    if (u < cum) return i;
  }
  return p_.size() - 1;  // u landed in the rounding slack at the top
}

double total_variation(const DiscreteDistribution& a,
                       const DiscreteDistribution& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("total_variation: support mismatch");
  return 0.5 * (a.probs() - b.probs()).lpNorm<1>();
}

double kl_divergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("kl_divergence: support mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0)
      throw std::invalid_argument(
          "kl_divergence: p has mass outside the support of q");
    acc += p[i] * std::log(p[i] / q[i]);
  }
  return acc;
}

double objective_value(const DiscreteDistribution& rho,
                       const DiscreteDistribution& p,
                       const Eigen::VectorXd& reward, double eta) {
  if (rho.size() != p.size() || reward.size() != p.size())
    throw std::invalid_argument("objective_value: support mismatch");
  double value = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (rho[i] == 0.0) continue;
    if (p[i] == 0.0)
      throw std::invalid_argument(
          "objective_value: rho not absolutely continuous w.r.t. p");
    value += rho[i] * reward[i] - eta * rho[i] * std::log(rho[i] / p[i]);
  }
  return value;
}

TiltResult tilt(const DiscreteDistribution& p, const Eigen::VectorXd& reward,
                double eta) {
  if (reward.size() != p.size())
    throw std::invalid_argument("tilt: support mismatch");
  if (!(eta > 0.0)) throw std::invalid_argument("tilt: eta must be positive");

  const Eigen::ArrayXd exponent = reward.array() / eta;
  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) shift = std::max(shift, exponent[i]);

  Eigen::VectorXd mass(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    mass[i] = p[i] > 0.0 ? p[i] * std::exp(exponent[i] - shift) : 0.0;
  const double scaled_sum = mass.sum();
  return {DiscreteDistribution(mass / scaled_sum),
          std::exp(shift + std::log(scaled_sum))};
}

DiscreteDistribution maximize_objective(const DiscreteDistribution& p,
                                        const Eigen::VectorXd& reward,
                                        double eta, int max_iterations) {
  if (reward.size() != p.size())
    throw std::invalid_argument("maximize_objective: support mismatch");
  if (!(eta > 0.0))
    throw std::invalid_argument("maximize_objective: eta must be positive");

  // Work in log space on the support of p. The mirror-descent update
  //   log rho <- log rho + step * dJ/drho, then renormalize
  // contracts toward the optimum at rate |1 - step*eta|, so step = 1/(2 eta)
  // halves the log-space error each sweep.
  const double step = 0.5 / eta;
  const Eigen::Index n = p.size();

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < n; ++i)
    if (p[i] > 0.0) support.push_back(i);

  Eigen::VectorXd log_p(support.size()), r(support.size());
  for (size_t k = 0; k < support.size(); ++k) {
    log_p[k] = std::log(p[support[k]]);
    r[k] = reward[support[k]];
  }

  Eigen::VectorXd log_rho =
      Eigen::VectorXd::Constant(support.size(),
                                -std::log(double(support.size())));
  Eigen::VectorXd rho = Eigen::VectorXd::Constant(support.size(),
                                                  1.0 / double(support.size()));

  double residual = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    // dJ/drho_i = R_i - eta (log rho_i - log p_i + 1); the constant is
    // absorbed by the renormalization. Factored so that entries whose
    // probability underflowed to zero stay at -inf instead of turning NaN.
    Eigen::VectorXd next_log =
        (1.0 - step * eta) * log_rho + step * (r + eta * log_p);
    const double shift = next_log.maxCoeff();
    Eigen::VectorXd w = (next_log.array() - shift).exp();
    const double total = w.sum();
    Eigen::VectorXd next = w / total;
    next_log = (next.array().log()).matrix();

    residual = (next - rho).lpNorm<1>() * 0.5;
    rho = next;
    log_rho = next_log;
    if (residual < 1e-15) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
      for (size_t k = 0; k < support.size(); ++k) full[support[k]] = rho[k];
      return DiscreteDistribution(full / full.sum());
    }
  }
  throw ConvergenceError("maximize_objective: no fixed point reached",
                         residual);
}

double verify_reward_conditioning_identity(const DiscreteDistribution& p,
                                           const Eigen::VectorXd& reward,
                                           double eta) {
  if (reward.size() != p.size())
    throw std::invalid_argument(
        "verify_reward_conditioning_identity: support mismatch");
  if (!(eta > 0.0))
    throw std::invalid_argument(
        "verify_reward_conditioning_identity: eta must be positive");

  // Likelihood of the "preferred" event, scaled by the max so it is a
  // probability; the scaling cancels after normalization.
  const double shift = reward.maxCoeff();
  Eigen::VectorXd likelihood = (reward.array() - shift).exp();

  // Posterior over the support given the preferred event.
  Eigen::VectorXd posterior = likelihood.cwiseProduct(p.probs());
  posterior /= posterior.sum();

  // Geometric blend p^(1-1/eta) * posterior^(1/eta).
  Eigen::VectorXd blend(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i)
    blend[i] = p[i] == 0.0 ? 0.0
                           : std::pow(p[i], 1.0 - 1.0 / eta) *
                                 std::pow(posterior[i], 1.0 / eta);

  return total_variation(DiscreteDistribution::from_unnormalized(blend),
                         tilt(p, reward, eta).rho_star);
}

}  // namespace editlab
