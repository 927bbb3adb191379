// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "editlab/diffusion.hpp"
#include "editlab/rng.hpp"
#include "editlab/worlds.hpp"

namespace editlab {

enum FilterFlag : unsigned {
  kNoneFollow = 1u << 0,        // every variant misses the target badly
  kAllUnchanged = 1u << 1,      // every variant sits on the input
  kOverEdited = 1u << 2,        // every variant drifts off target
  kDegenerateSimilar = 1u << 3, // variants are copies of each other
};

std::vector<std::string> flag_names(unsigned flags);

/// One preference-collection record: a condition, K variant edits, an
/// optional ranking (best first), and non-rankable filter flags. Flagged
/// groups are excluded from reward training.
struct RankedGroup {
  Sample input;
  EditInstruction instruction;
  std::vector<Sample> variants;
  std::vector<std::uint64_t> variant_seeds;  // per-variant derivation keys
  std::vector<int> ranking;                  // empty until ranked
  unsigned flags = 0;
};

/// K edits sampled from the model for one condition, each drawn from its own
/// derived stream so the set is reproducible from the base rng value.
std::vector<Sample> generate_variants(const DiffusionModel& m,
                                      const Sample& input,
                                      const EditInstruction& instr, int K,
                                      GuidanceScales g, Rng rng);

RankedGroup make_group(const DiffusionModel& m, const Sample& input,
                       const EditInstruction& instr, int K, GuidanceScales g,
                       Rng rng);

struct FilterThresholds {
  double tau_similar = 0.05;  // max pairwise distance below -> degenerate
  double tau_identity = 0.05; // all variants within this of the input
  double tau_over = 2.0;      // all off-target displacements beyond this
  double tau_align = 2.0;     // all alignment distances beyond this
};

unsigned filter_nonrankable(const World& w, const RankedGroup& group,
                            const FilterThresholds& thresholds);

/// Sort variants by oracle reward plus gaussian ranking noise, best first;
/// exact ties fall back to variant index order. Requires an unflagged group.
std::vector<int> rank_with_oracle(const PreferenceOracle& oracle,
                                  const World& w, const RankedGroup& group,
                                  Rng& rng);

/// All C(K,2) ordered pairs (better, worse) of a ranked, unflagged group.
std::vector<std::pair<int, int>> pairs_from_ranking(const RankedGroup& group);

// JSON Lines persistence, filter flags included so exclusions are auditable.
void save_groups(const std::string& path, const World& w,
                 const std::vector<RankedGroup>& groups);
std::vector<RankedGroup> load_groups(const std::string& path, const World& w);

}  // namespace editlab
