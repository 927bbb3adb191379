// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/numerics.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "editlab/errors.hpp"
#include "editlab/rng.hpp"

using namespace editlab;

namespace {

// Loop-only re-implementation of the forward pass, kept free of Eigen
// expressions so it cannot share a code path with the library version.
std::vector<double> naive_forward(const Mlp& net,
                                  const std::vector<double>& input) {
  std::vector<double> h = input;
  const size_t layers = net.widths.size() - 1;
  for (size_t l = 0; l < layers; ++l) {
    auto W = net.params.mat("W" + std::to_string(l));
    auto b = net.params.vec("b" + std::to_string(l));
    std::vector<double> out(size_t(net.widths[l + 1]), 0.0);
    for (size_t r = 0; r < out.size(); ++r) {
      double acc = b[Eigen::Index(r)];
      for (size_t c = 0; c < h.size(); ++c)
        acc += W(Eigen::Index(r), Eigen::Index(c)) * h[c];
      out[r] = acc;
    }
    if (l + 1 < layers)
      for (double& v : out)
        v = net.act == Activation::kTanh ? std::tanh(v) : std::max(v, 0.0);
    h = std::move(out);
  }
  return h;
}

}  // namespace

TEST_CASE("rng is reproducible and splits decorrelate") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(7);
  Rng s1 = base.split("init");
  Rng s2 = base.split("noise");
  CHECK(s1.next_u64() != s2.next_u64());
  // splitting does not consume from the parent
  Rng c(7), d(7);
  (void)c.split(3);
  CHECK(c.next_u64() == d.next_u64());
}

TEST_CASE("rng normal moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("forward: zero parameters give zero output") {
  Rng rng(1);
  Mlp net = make_mlp({3, 2}, Activation::kTanh, rng);
  net.params.values().setZero();
  Eigen::VectorXd y = forward(net, Eigen::VectorXd(Eigen::Vector3d(1.0, -2.0, 0.5)));
  CHECK(y.norm() == 0.0);
}

TEST_CASE("forward: identity-initialized linear layer") {
  Rng rng(1);
  Mlp net = make_mlp({2, 2}, Activation::kTanh, rng);
  net.params.values().setZero();
  net.params.mat("W0").setIdentity();
  Eigen::VectorXd y = forward(net, Eigen::VectorXd(Eigen::Vector2d(1.0, 2.0)));
  CHECK(y(0) == doctest::Approx(1.0));
  CHECK(y(1) == doctest::Approx(2.0));
}

TEST_CASE("forward: dimension mismatch rejected") {
  Rng rng(1);
  Mlp net = make_mlp({3, 2}, Activation::kTanh, rng);
  CHECK_THROWS_AS((void)forward(net, Eigen::VectorXd(Eigen::Vector2d(1.0, 2.0))),
                  std::invalid_argument);
}

TEST_CASE("forward matches straight-line re-implementation") {
  Rng rng(42);
  Mlp net = make_mlp({2, 8, 2}, Activation::kTanh, rng);
  Eigen::Vector2d x(0.5, -0.5);
  Eigen::VectorXd fast = forward(net, Eigen::VectorXd(x));
  std::vector<double> slow = naive_forward(net, {x[0], x[1]});
  REQUIRE(slow.size() == 2);
  CHECK(fast[0] == doctest::Approx(slow[0]).epsilon(1e-12));
  CHECK(fast[1] == doctest::Approx(slow[1]).epsilon(1e-12));
}

TEST_CASE("backward: zero cotangent gives zero gradient") {
  Rng rng(3);
  Mlp net = make_mlp({2, 4, 2}, Activation::kTanh, rng);
  Eigen::MatrixXd x = rng.normal_matrix(2, 5);
  MlpGradients g = backward(net, x, Eigen::MatrixXd::Zero(2, 5));
  CHECK(g.params.values().norm() == 0.0);
  CHECK(g.inputs.norm() == 0.0);
}

TEST_CASE("backward: linear net weight gradient is the outer product") {
  Rng rng(3);
  Mlp net = make_mlp({3, 2}, Activation::kTanh, rng);
  Eigen::VectorXd x = rng.normal_vector(3);
  Eigen::VectorXd cot = rng.normal_vector(2);
  MlpGradients g = backward(net, Eigen::MatrixXd(x), Eigen::MatrixXd(cot));
  Eigen::MatrixXd expected = cot * x.transpose();
  CHECK((g.params.mat("W0") - expected).norm() < 1e-14);
  CHECK((g.params.vec("b0") - cot).norm() < 1e-14);
}

TEST_CASE("backward agrees with central finite differences") {
  Rng rng(9);
  Mlp net = make_mlp({2, 8, 8, 2}, Activation::kTanh, rng);
  Eigen::MatrixXd x = rng.normal_matrix(2, 3);
  Eigen::MatrixXd cot = rng.normal_matrix(2, 3);

  MlpGradients g = backward(net, x, cot);
  Mlp probe = net;
  auto loss = [&](const Eigen::VectorXd& p) {
    probe.params.values() = p;
    return (forward(probe, x).array() * cot.array()).sum();
  };
  const double err =
      grad_check(loss, g.params.values(), net.params.values(), 1e-4);
  CHECK(err < 1e-4);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(5, -1.0, 1.0);
  const Eigen::VectorXd before = p;
  AdamState st;
  AdamConfig cfg;
  for (int i = 0; i < 10; ++i)
    adam_step(p, Eigen::VectorXd::Zero(5), st, cfg);
  CHECK((p - before).norm() == 0.0);
}

TEST_CASE("adam: first step moves by about lr in the gradient sign") {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd g(4);
  g << 3.0, -0.25, 1e-3, -7.0;
  AdamState st;
  AdamConfig cfg;
  cfg.lr = 0.01;
  adam_step(p, g, st, cfg);
  for (int i = 0; i < 4; ++i)
    CHECK(p[i] == doctest::Approx(-cfg.lr * (g[i] > 0 ? 1.0 : -1.0))
                      .epsilon(1e-4));
}

TEST_CASE("adam: quadratic bowl converges") {
  Rng rng(11);
  Eigen::VectorXd p = rng.normal_vector(6);
  AdamState st;
  AdamConfig cfg;
  cfg.lr = 1e-2;
  for (int i = 0; i < 500; ++i) adam_step(p, Eigen::VectorXd(2.0 * p), st, cfg);
  CHECK(p.norm() < 1e-3);
}

TEST_CASE("adam: non-finite gradient raises TrainingDiverged") {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd g(2);
  g << 1.0, std::numeric_limits<double>::quiet_NaN();
  AdamState st;
  CHECK_THROWS_AS(adam_step(p, g, st, AdamConfig{}), TrainingDiverged);
}

TEST_CASE("grad_check trivial cases") {
  Eigen::VectorXd point = Eigen::VectorXd::LinSpaced(4, -2.0, 1.0);
  auto constant = [](const Eigen::VectorXd&) { return 3.5; };
  CHECK(grad_check(constant, Eigen::VectorXd::Zero(4), point) ==
        doctest::Approx(0.0));

  auto quadratic = [](const Eigen::VectorXd& p) { return p.squaredNorm(); };
  CHECK(grad_check(quadratic, Eigen::VectorXd(2.0 * point), point) < 1e-8);
}

TEST_CASE("parameter vector layout bookkeeping") {
  ParameterVector pv = ParameterVector::zeros({{"A", 2, 3}, {"b", 4, 1}});
  CHECK(pv.size() == 10);
  pv.mat("A")(1, 2) = 5.0;
  pv.vec("b")[0] = -1.0;
  CHECK(pv.values()[5] == 5.0);  // column-major within the block
  CHECK(pv.values()[6] == -1.0);
  CHECK(pv.all_finite());
  CHECK(pv.same_layout(pv.zeros_like()));
  CHECK_THROWS_AS((void)pv.mat("missing"), std::invalid_argument);
}

TEST_CASE("mlp init is reproducible and respects the fan bound") {
  Rng r1(99), r2(99);
  Mlp a = make_mlp({4, 16, 3}, Activation::kRelu, r1);
  Mlp b = make_mlp({4, 16, 3}, Activation::kRelu, r2);
  CHECK((a.params.values() - b.params.values()).norm() == 0.0);
  const double bound0 = std::sqrt(6.0 / (4 + 16));
  CHECK(a.params.mat("W0").cwiseAbs().maxCoeff() <= bound0);
}
