// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "editlab/rng.hpp"

namespace editlab {

enum class WorldKind { kContinuous, kDiscrete };

/// A point in an editing world. Continuous samples are free coordinates in
/// the world's bounding box; discrete samples sit on one of the world's
/// states and also carry that state's index.
struct Sample {
  Eigen::Vector2d coords = Eigen::Vector2d::Zero();
  int state = -1;  // valid only in the discrete world
};

/// Structured editing command plus its surface text. The text re-parses to
/// the same structured form (see parse_instruction).
struct EditInstruction {
  std::string verb;    // translate | reflect | scale | recolor | keep |
                       // advance | retreat
  std::string object;  // point | cluster | marker
  Eigen::Vector2d params = Eigen::Vector2d::Zero();
  std::string text;
};

bool same_instruction(const EditInstruction& a, const EditInstruction& b);

enum class Provenance { kClean, kCorrupted, kCycleAugmented };

std::string to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// The atomic training record: an input, what was asked, and what came out.
struct Triplet {
  Sample input;
  EditInstruction instruction;
  Sample edited;
  Provenance provenance = Provenance::kClean;
  std::uint64_t seed = 0;
};

/// Synthetic stand-in for human preference. Scores an edit by how close it
/// lands to the ground-truth result (alignment) and how little it moves in
/// directions the instruction does not license (fidelity). Perfect edits
/// score exactly zero; everything else is negative.
struct PreferenceOracle {
  double lambda_align = 1.0;
  double lambda_fidelity = 0.5;
  double rank_noise = 0.1;  // applied at ranking time only
};

struct ContinuousConfig {
  double box = 4.0;          // coordinates live in [-box, box]^2
  double component_std = 0.4;
  double edit_jitter = 0.08;   // spread of the ground-truth edit operator
  double off_target_std = 1.0; // corruption displacement scale
  std::vector<Eigen::Vector2d> centers = {
      {2.0, 2.0}, {-2.0, 2.0}, {-2.0, -2.0}, {2.0, -2.0}};
  std::vector<std::string> colors = {"red", "green", "blue", "yellow"};
  std::vector<double> magnitudes = {0.5, 1.0, 1.5, 2.0};
  std::vector<double> factors = {1.25, 1.5, 2.0};
};

/// Finite world: n states evenly spaced on a ring inside the box. Edits
/// rotate a marker around the ring; the clean conditional is a wrapped
/// rounded Gaussian around the target state.
struct DiscreteConfig {
  int n_states = 16;
  int input_stride = 2;    // inputs are states 0, stride, 2*stride, ...
  double ring_radius = 2.5;
  double spread = 1.0;     // in state units; <= 0 means uniform conditional
  int off_target_window = 3;
  std::vector<std::pair<std::string, int>> edits = {
      {"advance", 3}, {"retreat", 5}};  // verb, step count
  bool include_keep = false;
};

struct World {
  WorldKind kind = WorldKind::kContinuous;
  ContinuousConfig cont;
  DiscreteConfig disc;

  static World continuous(ContinuousConfig cfg = {});
  static World discrete(DiscreteConfig cfg = {});
};

std::string world_name(const World& w);

// -- samples and instructions -------------------------------------------

Sample random_input(const World& w, Rng& rng);
EditInstruction random_instruction(const World& w, Rng& rng);

/// All (verb, object) pairs the world can express; the embedding vocabulary.
std::vector<std::pair<std::string, std::string>> instruction_vocab(
    const World& w);

/// Deterministic target of a perfectly executed instruction.
Eigen::Vector2d true_edit_mean(const World& w, const Sample& input,
                               const EditInstruction& instr);

/// Draw from the ground-truth edit conditional T_instr(. | input).
/// "keep" is exact; other verbs add the world's edit jitter.
Sample true_edit(const World& w, const Sample& input,
                 const EditInstruction& instr, Rng& rng);

/// Distance from the edited sample to the ground-truth target.
double alignment_distance(const World& w, const Triplet& t);

/// Magnitude of the displacement component the instruction does not license.
double off_target_distance(const World& w, const Triplet& t);

double oracle_reward(const PreferenceOracle& oracle, const World& w,
                     const Triplet& t);

/// Render the canonical surface text for a structured instruction.
std::string render_instruction(const World& w, const EditInstruction& instr);

/// Parse surface text back to a structured instruction; nullopt when the
/// text is not executable in this world.
std::optional<EditInstruction> parse_instruction(const World& w,
                                                 const std::string& text);

// -- discrete-world helpers ----------------------------------------------

Eigen::Vector2d state_coords(const World& w, int state);
int nearest_state(const World& w, const Eigen::Vector2d& point);

struct DiscreteCondition {
  int input_state = 0;
  EditInstruction instruction;
};

std::vector<DiscreteCondition> enumerate_conditions(const World& w);

struct ConditionalTables {
  std::vector<DiscreteCondition> conditions;
  Eigen::MatrixXd probs;  // one row per condition, columns over states
};

/// Exact conditionals p(edited | input, instruction) of generate_dataset at
/// the given corruption rate, computed from the generator's mixture in
/// closed form rather than by sampling.
ConditionalTables discrete_world_tables(const World& w,
                                        double corruption_rate = 0.0);

// -- dataset generation ----------------------------------------------------

/// n triplets; each is clean with probability 1 - corruption_rate, otherwise
/// one of {wrong edit, exaggerated edit, off-target perturbation} with equal
/// shares. Record i draws everything from the child stream split(i), so the
/// output is order-stable however the work is scheduled.
std::vector<Triplet> generate_dataset(const World& w, int n,
                                      double corruption_rate, Rng rng);

// -- JSON Lines persistence -------------------------------------------------

void save_triplets(const std::string& path, const World& w,
                   const std::vector<Triplet>& data);
std::vector<Triplet> load_triplets(const std::string& path, const World& w);

}  // namespace editlab
