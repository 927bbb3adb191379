// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace editlab {

struct TrainingDiverged : std::runtime_error {
  explicit TrainingDiverged(const std::string& what)
      : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) +
                           ")"),
        residual(residual) {}
  double residual;
};

struct UnsupportedInstruction : std::invalid_argument {
  explicit UnsupportedInstruction(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace editlab
