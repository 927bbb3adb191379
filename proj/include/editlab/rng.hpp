// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace editlab {

/// Counter-based pseudo-random generator built on the splitmix64 finalizer.
///
/// Every draw hashes (key, counter); child streams derive a fresh key from
/// the parent, so results depend only on the seed and the sequence of calls,
/// never on platform or library version. Copying an Rng forks the stream:
/// both copies replay the same draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  /// Derive an independent child stream. Does not consume from this stream.
  Rng split(std::uint64_t substream) const {
    Rng child(FromKey{}, mix(mix(key_ ^ kSplitSalt) + kGamma * substream));
    return child;
  }
  Rng split(std::string_view name) const { return split(fnv1a(name)); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe to pass to log().
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller. Consumes two u64 per call.
  double normal();

  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
  Eigen::VectorXd uniform_vector(Eigen::Index n, double lo, double hi);

 private:
  struct FromKey {};
  Rng(FromKey, std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return h;
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kSeedSalt = 0x5eed5a175eed5a17ull;
  static constexpr std::uint64_t kSplitSalt = 0x51175a175eed0011ull;

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace editlab
