// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/worlds.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "editlab/errors.hpp"

using namespace editlab;

namespace {

World zero_jitter_world() {
  ContinuousConfig cfg;
  cfg.edit_jitter = 0.0;
  return World::continuous(cfg);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("true_edit: keep returns the input exactly") {
  World w = World::continuous();
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    Sample x = random_input(w, rng);
    EditInstruction keep{"keep", "point", {0, 0}, "keep it"};
    Sample y = true_edit(w, x, keep, rng);
    CHECK((y.coords - x.coords).norm() == 0.0);
  }
}

TEST_CASE("true_edit: translate right by 1 with zero jitter") {
  World w = zero_jitter_world();
  Rng rng(2);
  EditInstruction instr{"translate", "point", {1.0, 0.0}, ""};
  Sample y = true_edit(w, Sample{{0.0, 0.0}, -1}, instr, rng);
  CHECK(y.coords.x() == doctest::Approx(1.0));
  CHECK(y.coords.y() == doctest::Approx(0.0));
}

TEST_CASE("true_edit: reflect across the y-axis") {
  World w = zero_jitter_world();
  Rng rng(3);
  EditInstruction instr{"reflect", "point", {1.0, 0.0}, ""};
  Sample y = true_edit(w, Sample{{0.7, -0.3}, -1}, instr, rng);
  CHECK(y.coords.x() == doctest::Approx(-0.7));
  CHECK(y.coords.y() == doctest::Approx(-0.3));
}

TEST_CASE("true_edit rejects unknown verbs") {
  World w = World::continuous();
  Rng rng(4);
  EditInstruction bogus{"explode", "point", {0, 0}, "explode the point"};
  CHECK_THROWS_AS((void)true_edit(w, Sample{{0, 0}, -1}, bogus, rng),
                  UnsupportedInstruction);
}

TEST_CASE("reflection applied twice is the identity") {
  World w = zero_jitter_world();
  Rng rng(5);
  for (int axis : {0, 1}) {
    EditInstruction instr{"reflect", "point", {double(axis), 0.0}, ""};
    for (int i = 0; i < 20; ++i) {
      Sample x = random_input(w, rng);
      Sample y = true_edit(w, x, instr, rng);
      Sample z = true_edit(w, y, instr, rng);
      CHECK((z.coords - x.coords).norm() < 1e-12);
    }
  }
}

TEST_CASE("oracle_reward: perfect edit scores zero, others negative") {
  World w = zero_jitter_world();
  PreferenceOracle oracle;
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    Sample x = random_input(w, rng);
    EditInstruction instr = random_instruction(w, rng);
    Triplet t{x, instr, true_edit(w, x, instr, rng), Provenance::kClean, 0};
    CHECK(oracle_reward(oracle, w, t) == doctest::Approx(0.0));
    Triplet off = t;
    off.edited.coords += Eigen::Vector2d(0.05, -0.03);
    CHECK(oracle_reward(oracle, w, off) < 0.0);
  }
}

TEST_CASE("oracle_reward: unmoved input under translate right by 1") {
  World w = zero_jitter_world();
  PreferenceOracle oracle;
  EditInstruction instr{"translate", "point", {1.0, 0.0}, ""};
  Sample x{{0.5, 0.5}, -1};
  Triplet t{x, instr, x, Provenance::kClean, 0};
  CHECK(oracle_reward(oracle, w, t) == doctest::Approx(-1.0));
}

TEST_CASE("oracle_reward ordering matches a from-scratch recomputation") {
  World w = World::continuous();
  PreferenceOracle oracle{1.0, 0.5, 0.1};
  Rng rng(7);
  std::vector<Triplet> batch = generate_dataset(w, 200, 0.5, rng.split("d"));
  for (const Triplet& t : batch) {
    const Eigen::Vector2d mean = true_edit_mean(w, t.input, t.instruction);
    const Eigen::Vector2d licensed = mean - t.input.coords;
    const Eigen::Vector2d delta = t.edited.coords - t.input.coords;
    double off;
    if (licensed.norm() < 1e-12) {
      off = delta.norm();
    } else {
      Eigen::Vector2d u = licensed / licensed.norm();
      off = (delta - delta.dot(u) * u).norm();
    }
    const double align = (t.edited.coords - mean).norm();
    const double expected = -1.0 * align * align - 0.5 * off * off;
    CHECK(oracle_reward(oracle, w, t) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("generate_dataset: corruption bookkeeping") {
  World w = World::continuous();
  Rng rng(8);

  SUBCASE("rate 0 gives only clean records that match true_edit means") {
    auto data = generate_dataset(w, 500, 0.0, rng);
    for (const Triplet& t : data) {
      CHECK(t.provenance == Provenance::kClean);
      CHECK(alignment_distance(w, t) < 5 * w.cont.edit_jitter + 1e-9);
    }
  }
  SUBCASE("rate 1 gives no clean records") {
    auto data = generate_dataset(w, 1000, 1.0, rng);
    for (const Triplet& t : data)
      CHECK(t.provenance == Provenance::kCorrupted);
  }
  SUBCASE("rate 0.3 lands in the binomial 99% interval") {
    auto data = generate_dataset(w, 10000, 0.3, rng);
    int clean = 0;
    for (const Triplet& t : data)
      clean += t.provenance == Provenance::kClean;
    const double frac = double(clean) / double(data.size());
    CHECK(frac > 0.67);
    CHECK(frac < 0.73);
  }
}

TEST_CASE("dataset generation is byte-identical across runs") {
  World w = World::continuous();
  auto a = generate_dataset(w, 300, 0.25, Rng(99));
  auto b = generate_dataset(w, 300, 0.25, Rng(99));
  const char* pa = "/tmp/editlab_ds_a.jsonl";
  const char* pb = "/tmp/editlab_ds_b.jsonl";
  save_triplets(pa, w, a);
  save_triplets(pb, w, b);
  CHECK(slurp(pa) == slurp(pb));
  CHECK(!slurp(pa).empty());

  auto loaded = load_triplets(pa, w);
  REQUIRE(loaded.size() == a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK((loaded[i].edited.coords - a[i].edited.coords).norm() == 0.0);
    CHECK(loaded[i].instruction.text == a[i].instruction.text);
  }
  std::remove(pa);
  std::remove(pb);
}

TEST_CASE("instruction text re-parses to the same structured form") {
  World w = World::continuous();
  Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    EditInstruction instr = random_instruction(w, rng);
    auto back = parse_instruction(w, instr.text);
    REQUIRE(back.has_value());
    CHECK(same_instruction(*back, instr));
    CHECK(render_instruction(w, instr) == instr.text);
  }
  World d = World::discrete();
  for (int i = 0; i < 20; ++i) {
    EditInstruction instr = random_instruction(d, rng);
    auto back = parse_instruction(d, instr.text);
    REQUIRE(back.has_value());
    CHECK(same_instruction(*back, instr));
  }
  CHECK(!parse_instruction(w, "liquefy the point").has_value());
}

TEST_CASE("discrete world: state embedding round trip") {
  World d = World::discrete();
  for (int s = 0; s < d.disc.n_states; ++s)
    CHECK(nearest_state(d, state_coords(d, s)) == s);
}

TEST_CASE("discrete tables: rows are normalized probability vectors") {
  World d = World::discrete();
  for (double rate : {0.0, 0.3, 1.0}) {
    ConditionalTables tables = discrete_world_tables(d, rate);
    CHECK(tables.probs.rows() == Eigen::Index(tables.conditions.size()));
    for (Eigen::Index r = 0; r < tables.probs.rows(); ++r) {
      CHECK(std::abs(tables.probs.row(r).sum() - 1.0) < 1e-12);
      CHECK(tables.probs.row(r).minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("discrete tables: uniform conditional config gives uniform rows") {
  DiscreteConfig cfg;
  cfg.spread = 0.0;  // uniform conditional
  World d = World::discrete(cfg);
  ConditionalTables tables = discrete_world_tables(d, 0.0);
  for (Eigen::Index r = 0; r < tables.probs.rows(); ++r)
    CHECK((tables.probs.row(r).array() - 1.0 / cfg.n_states).abs().maxCoeff() <
          1e-12);
}

TEST_CASE("discrete tables match a million-record empirical run") {
  World d = World::discrete();
  const double rate = 0.3;
  ConditionalTables tables = discrete_world_tables(d, rate);

  std::map<std::pair<int, std::string>, Eigen::Index> row_of;
  for (size_t i = 0; i < tables.conditions.size(); ++i)
    row_of[{tables.conditions[i].input_state,
            tables.conditions[i].instruction.text}] = Eigen::Index(i);

  Eigen::MatrixXd counts =
      Eigen::MatrixXd::Zero(tables.probs.rows(), d.disc.n_states);
  auto data = generate_dataset(d, 1000000, rate, Rng(2024));
  for (const Triplet& t : data)
    counts(row_of.at({t.input.state, t.instruction.text}), t.edited.state) +=
        1.0;

  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    const double total = counts.row(r).sum();
    REQUIRE(total > 0);
    const double tv =
        0.5 * (counts.row(r) / total - tables.probs.row(r)).lpNorm<1>();
    CHECK(tv < 0.01);
  }
}

TEST_CASE("discrete true_edit lands near the commanded target") {
  World d = World::discrete();
  Rng rng(11);
  EditInstruction adv{"advance", "marker", {3.0, 0.0}, "advance the marker by 3"};
  int hits = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    Sample in{state_coords(d, 4), 4};
    Sample out = true_edit(d, in, adv, rng);
    if (out.state == 7) ++hits;
  }
  // mode of the wrapped rounded gaussian with spread 1.0
  CHECK(double(hits) / n > 0.25);
  CHECK(double(hits) / n < 0.55);
}
