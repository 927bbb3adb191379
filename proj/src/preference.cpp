// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/preference.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace editlab {

std::vector<std::string> flag_names(unsigned flags) {
  std::vector<std::string> names;
  if (flags & kNoneFollow) names.push_back("none_follow");
  if (flags & kAllUnchanged) names.push_back("all_unchanged");
  if (flags & kOverEdited) names.push_back("over_edited");
  if (flags & kDegenerateSimilar) names.push_back("degenerate_similar");
  return names;
}

namespace {

unsigned flag_from_name(const std::string& name) {
  if (name == "none_follow") return kNoneFollow;
  if (name == "all_unchanged") return kAllUnchanged;
  if (name == "over_edited") return kOverEdited;
  if (name == "degenerate_similar") return kDegenerateSimilar;
  throw std::invalid_argument("unknown filter flag '" + name + "'");
}

}  // namespace

std::vector<Sample> generate_variants(const DiffusionModel& m,
                                      const Sample& input,
                                      const EditInstruction& instr, int K,
                                      GuidanceScales g, Rng rng) {
  if (K < 2) throw std::invalid_argument("generate_variants: K must be >= 2");
  Condition c;
  c.input = input.coords;
  c.instruction = instr;
  if (m.conditions_on_bucket) c.bucket = 5;  // inference-time convention
  std::vector<Condition> conds(size_t(K), c);
  // sample() derives one child stream per column, so the K chains are
  // distinct and the whole set replays from the same base rng.
  const Eigen::MatrixXd out = sample(m, conds, g, m.schedule.T, rng);
  std::vector<Sample> variants(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    variants[size_t(k)].coords = out.col(k);
    variants[size_t(k)].state = -1;
  }
  return variants;
}

RankedGroup make_group(const DiffusionModel& m, const Sample& input,
                       const EditInstruction& instr, int K, GuidanceScales g,
                       Rng rng) {
  RankedGroup group;
  group.input = input;
  group.instruction = instr;
  group.variants = generate_variants(m, input, instr, K, g, rng);
  group.variant_seeds.resize(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) group.variant_seeds[size_t(k)] = std::uint64_t(k);
  return group;
}

unsigned filter_nonrankable(const World& w, const RankedGroup& group,
                            const FilterThresholds& th) {
  const size_t K = group.variants.size();
  if (K == 0) return 0;

  double max_pairwise = 0.0;
  for (size_t a = 0; a < K; ++a)
    for (size_t b = a + 1; b < K; ++b)
      max_pairwise = std::max(
          max_pairwise,
          (group.variants[a].coords - group.variants[b].coords).norm());

  bool all_unchanged = true, all_over = true, none_follow = true;
  for (const Sample& v : group.variants) {
    Triplet t{group.input, group.instruction, v, Provenance::kClean, 0};
    all_unchanged &= (v.coords - group.input.coords).norm() < th.tau_identity;
    all_over &= off_target_distance(w, t) > th.tau_over;
    none_follow &= alignment_distance(w, t) > th.tau_align;
  }

  unsigned flags = 0;
  if (none_follow) flags |= kNoneFollow;
  if (all_unchanged) flags |= kAllUnchanged;
  if (all_over) flags |= kOverEdited;
  if (max_pairwise < th.tau_similar) flags |= kDegenerateSimilar;
  return flags;
}

std::vector<int> rank_with_oracle(const PreferenceOracle& oracle,
                                  const World& w, const RankedGroup& group,
                                  Rng& rng) {
  if (group.flags != 0)
    throw std::invalid_argument("rank_with_oracle: group is flagged");
  const int K = int(group.variants.size());
  std::vector<std::pair<double, int>> scored(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    Triplet t{group.input, group.instruction, group.variants[size_t(k)],
              Provenance::kClean, 0};
    double s = oracle_reward(oracle, w, t);
    if (oracle.rank_noise > 0.0) s += oracle.rank_noise * rng.normal();
    scored[size_t(k)] = {s, k};
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;  // tie-break by index
                   });
  std::vector<int> ranking(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) ranking[size_t(k)] = scored[size_t(k)].second;
  return ranking;
}

std::vector<std::pair<int, int>> pairs_from_ranking(const RankedGroup& group) {
  if (group.flags != 0)
    throw std::invalid_argument("pairs_from_ranking: group is flagged");
  const size_t K = group.variants.size();
  if (group.ranking.size() != K || K < 2)
    throw std::invalid_argument("pairs_from_ranking: group is not ranked");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(K * (K - 1) / 2);
  for (size_t a = 0; a < K; ++a)
    for (size_t b = a + 1; b < K; ++b)
      pairs.emplace_back(group.ranking[a], group.ranking[b]);
  return pairs;
}

namespace {

nlohmann::json sample_json(const World& w, const Sample& s) {
  if (w.kind == WorldKind::kDiscrete) return s.state;
  return nlohmann::json::array({s.coords.x(), s.coords.y()});
}

Sample sample_from(const World& w, const nlohmann::json& j) {
  if (w.kind == WorldKind::kDiscrete) {
    const int state = j.get<int>();
    return {state_coords(w, state), state};
  }
  return {{j.at(0).get<double>(), j.at(1).get<double>()}, -1};
}

}  // namespace

void save_groups(const std::string& path, const World& w,
                 const std::vector<RankedGroup>& groups) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const RankedGroup& g : groups) {
    nlohmann::json variants = nlohmann::json::array();
    for (size_t k = 0; k < g.variants.size(); ++k)
      variants.push_back({{"sample", sample_json(w, g.variants[k])},
                          {"seed", g.variant_seeds[k]}});
    nlohmann::json j{
        {"world", world_name(w)},
        {"input", sample_json(w, g.input)},
        {"instruction",
         {{"verb", g.instruction.verb},
          {"object", g.instruction.object},
          {"params", {g.instruction.params[0], g.instruction.params[1]}},
          {"text", g.instruction.text}}},
        {"variants", variants},
        {"ranking", g.ranking},
        {"flags", flag_names(g.flags)}};
    out << j.dump() << '\n';
  }
}

std::vector<RankedGroup> load_groups(const std::string& path, const World& w) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<RankedGroup> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    RankedGroup g;
    g.input = sample_from(w, j.at("input"));
    const auto& ji = j.at("instruction");
    g.instruction.verb = ji.at("verb").get<std::string>();
    g.instruction.object = ji.at("object").get<std::string>();
    g.instruction.params = {ji.at("params").at(0).get<double>(),
                            ji.at("params").at(1).get<double>()};
    g.instruction.text = ji.at("text").get<std::string>();
    for (const auto& v : j.at("variants")) {
      g.variants.push_back(sample_from(w, v.at("sample")));
      g.variant_seeds.push_back(v.at("seed").get<std::uint64_t>());
    }
    g.ranking = j.at("ranking").get<std::vector<int>>();
    for (const auto& f : j.at("flags"))
      g.flags |= flag_from_name(f.get<std::string>());
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace editlab
