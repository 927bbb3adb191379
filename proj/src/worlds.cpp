// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/worlds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "editlab/errors.hpp"
#include "editlab/strutil.hpp"

namespace editlab {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c >= 'A' && c <= 'Z' ? char(c - 'A' + 'a') : c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_number_token(std::string_view tok) {
  if (tok.empty()) return false;
  bool dot = false, digit = false;
  size_t i = tok[0] == '-' ? 1 : 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] == '.') {
      if (dot) return false;
      dot = true;
    } else if (tok[i] >= '0' && tok[i] <= '9') {
      digit = true;
    } else {
      return false;
    }
  }
  return digit;
}

bool same_instruction(const EditInstruction& a, const EditInstruction& b) {
  return a.verb == b.verb && a.object == b.object &&
         (a.params - b.params).norm() == 0.0;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kClean: return "clean";
    case Provenance::kCorrupted: return "corrupted";
    case Provenance::kCycleAugmented: return "cycle_augmented";
  }
  return "clean";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "clean") return Provenance::kClean;
  if (s == "corrupted") return Provenance::kCorrupted;
  if (s == "cycle_augmented") return Provenance::kCycleAugmented;
  throw std::invalid_argument("unknown provenance '" + std::string(s) + "'");
}

World World::continuous(ContinuousConfig cfg) {
  World w;
  w.kind = WorldKind::kContinuous;
  w.cont = std::move(cfg);
  return w;
}

World World::discrete(DiscreteConfig cfg) {
  if (cfg.n_states < 2 || cfg.n_states > 400)
    throw std::invalid_argument("discrete world supports 2..400 states");
  World w;
  w.kind = WorldKind::kDiscrete;
  w.disc = std::move(cfg);
  return w;
}

std::string world_name(const World& w) {
  return w.kind == WorldKind::kContinuous ? "continuous" : "discrete";
}

namespace {

Eigen::Vector2d clamp_box(const Eigen::Vector2d& p, double box) {
  return {std::clamp(p.x(), -box, box), std::clamp(p.y(), -box, box)};
}

int wrap_state(int j, int n) { return ((j % n) + n) % n; }

int nearest_center(const ContinuousConfig& cfg, const Eigen::Vector2d& p) {
  int best = 0;
  double best_d = (p - cfg.centers[0]).squaredNorm();
  for (size_t i = 1; i < cfg.centers.size(); ++i) {
    const double d = (p - cfg.centers[i]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = int(i);
    }
  }
  return best;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Probability that round(mu + spread * N(0,1)) lands on state j mod n.
Eigen::VectorXd wrapped_round_gaussian(int n, int target, double spread) {
  Eigen::VectorXd p(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int m = -4; m <= 4; ++m) {
      const double center = double(j - target + m * n);
      acc += normal_cdf((center + 0.5) / spread) -
             normal_cdf((center - 0.5) / spread);
    }
    p[j] = acc;
  }
  return p / p.sum();
}

std::vector<EditInstruction> discrete_instructions(const World& w);

}  // namespace

Eigen::Vector2d state_coords(const World& w, int state) {
  const double angle =
      2.0 * std::numbers::pi * double(state) / double(w.disc.n_states);
  return w.disc.ring_radius * Eigen::Vector2d(std::cos(angle),
                                              std::sin(angle));
}

int nearest_state(const World& w, const Eigen::Vector2d& point) {
  const double angle = std::atan2(point.y(), point.x());
  const double turns = angle / (2.0 * std::numbers::pi);
  return wrap_state(int(std::lround(turns * w.disc.n_states)),
                    w.disc.n_states);
}

Sample random_input(const World& w, Rng& rng) {
  if (w.kind == WorldKind::kContinuous) {
    const auto& cfg = w.cont;
    const int comp = int(rng.uniform_int(cfg.centers.size()));
    Eigen::Vector2d p =
        cfg.centers[comp] + cfg.component_std * Eigen::Vector2d(rng.normal(),
                                                                rng.normal());
    return {clamp_box(p, cfg.box), -1};
  }
  const int n_inputs = w.disc.n_states / w.disc.input_stride;
  const int state =
      int(rng.uniform_int(std::uint64_t(n_inputs))) * w.disc.input_stride;
  return {state_coords(w, state), state};
}

namespace {

EditInstruction make_translate(const World& w, const std::string& object,
                               int dir, double mag) {
  // dir: 0 left, 1 right, 2 down, 3 up
  static const char* names[] = {"left", "right", "down", "up"};
  Eigen::Vector2d d(0, 0);
  if (dir == 0) d.x() = -mag;
  if (dir == 1) d.x() = mag;
  if (dir == 2) d.y() = -mag;
  if (dir == 3) d.y() = mag;
  EditInstruction instr{"translate", object, d, ""};
  instr.text = "move the " + object + " " + names[dir] + " by " +
               format_double(mag);
  (void)w;
  return instr;
}

EditInstruction make_reflect(const std::string& object, int axis) {
  EditInstruction instr{"reflect", object, {double(axis), 0.0}, ""};
  instr.text = "reflect the " + object + " across the " +
               (axis == 0 ? std::string("x-axis") : std::string("y-axis"));
  return instr;
}

EditInstruction make_scale(const std::string& object, double factor,
                           bool enlarge) {
  EditInstruction instr{
      "scale", object, {factor, enlarge ? 1.0 : -1.0}, ""};
  instr.text = (enlarge ? "enlarge the " : "shrink the ") + object + " by " +
               format_double(factor);
  return instr;
}

EditInstruction make_recolor(const ContinuousConfig& cfg,
                             const std::string& object, int color) {
  EditInstruction instr{"recolor", object, {double(color), 0.0}, ""};
  instr.text = "change the " + object + " to " + cfg.colors[size_t(color)];
  return instr;
}

EditInstruction make_keep(const std::string& object) {
  return {"keep", object, {0.0, 0.0}, "keep the " + object};
}

EditInstruction make_step(const std::string& verb, int k) {
  EditInstruction instr{verb, "marker", {double(k), 0.0}, ""};
  instr.text = verb + " the marker by " + std::to_string(k);
  return instr;
}

std::vector<EditInstruction> discrete_instructions(const World& w) {
  std::vector<EditInstruction> out;
  for (const auto& [verb, k] : w.disc.edits) out.push_back(make_step(verb, k));
  if (w.disc.include_keep) out.push_back(make_keep("marker"));
  return out;
}

}  // namespace

EditInstruction random_instruction(const World& w, Rng& rng) {
  if (w.kind == WorldKind::kDiscrete) {
    const auto all = discrete_instructions(w);
    return all[rng.uniform_int(all.size())];
  }
  const auto& cfg = w.cont;
  const std::string object = rng.uniform_int(2) == 0 ? "point" : "cluster";
  switch (rng.uniform_int(5)) {
    case 0:
      return make_translate(w, object, int(rng.uniform_int(4)),
                            cfg.magnitudes[rng.uniform_int(
                                cfg.magnitudes.size())]);
    case 1:
      return make_reflect(object, int(rng.uniform_int(2)));
    case 2:
      return make_scale(object, cfg.factors[rng.uniform_int(cfg.factors.size())],
                        rng.uniform_int(2) == 0);
    case 3:
      return make_recolor(cfg, object, int(rng.uniform_int(cfg.colors.size())));
    default:
      return make_keep(object);
  }
}

std::vector<std::pair<std::string, std::string>> instruction_vocab(
    const World& w) {
  std::vector<std::pair<std::string, std::string>> vocab;
  if (w.kind == WorldKind::kContinuous) {
    for (const char* verb : {"translate", "reflect", "scale", "recolor",
                             "keep"})
      for (const char* obj : {"point", "cluster"})
        vocab.emplace_back(verb, obj);
  } else {
    for (const auto& [verb, k] : w.disc.edits) vocab.emplace_back(verb,
                                                                  "marker");
    vocab.emplace_back("keep", "marker");
  }
  return vocab;
}

namespace {

int discrete_target(const World& w, int input_state,
                    const EditInstruction& instr, int exaggerate = 1) {
  const int n = w.disc.n_states;
  const int k = int(instr.params[0]) * exaggerate;
  if (instr.verb == "advance") return wrap_state(input_state + k, n);
  if (instr.verb == "retreat") return wrap_state(input_state - k, n);
  if (instr.verb == "keep") return input_state;
  throw UnsupportedInstruction("verb '" + instr.verb +
                               "' not in the discrete world");
}

}  // namespace

Eigen::Vector2d true_edit_mean(const World& w, const Sample& input,
                               const EditInstruction& instr) {
  if (w.kind == WorldKind::kDiscrete)
    return state_coords(w, discrete_target(w, input.state, instr));

  const auto& cfg = w.cont;
  const Eigen::Vector2d& x = input.coords;
  if (instr.verb == "translate") return clamp_box(x + instr.params, cfg.box);
  if (instr.verb == "reflect") {
    if (instr.params[0] == 0.0) return {x.x(), -x.y()};
    return {-x.x(), x.y()};
  }
  if (instr.verb == "scale") {
    const double f =
        instr.params[1] > 0 ? instr.params[0] : 1.0 / instr.params[0];
    return clamp_box(f * x, cfg.box);
  }
  if (instr.verb == "recolor") {
    const int from = nearest_center(cfg, x);
    const int to = int(instr.params[0]);
    if (to < 0 || to >= int(cfg.centers.size()))
      throw UnsupportedInstruction("recolor target out of range");
    return clamp_box(x - cfg.centers[size_t(from)] + cfg.centers[size_t(to)],
                     cfg.box);
  }
  if (instr.verb == "keep") return x;
  throw UnsupportedInstruction("verb '" + instr.verb +
                               "' not in the continuous world");
}

namespace {

Sample discrete_draw(const World& w, int target, Rng& rng) {
  const int n = w.disc.n_states;
  int state;
  if (w.disc.spread <= 0.0) {
    state = int(rng.uniform_int(std::uint64_t(n)));
  } else {
    const double g = w.disc.spread * rng.normal();
    state = wrap_state(target + int(std::lround(g)), n);
  }
  return {state_coords(w, state), state};
}

}  // namespace

Sample true_edit(const World& w, const Sample& input,
                 const EditInstruction& instr, Rng& rng) {
  if (w.kind == WorldKind::kDiscrete)
    return discrete_draw(w, discrete_target(w, input.state, instr), rng);

  const Eigen::Vector2d mean = true_edit_mean(w, input, instr);
  if (instr.verb == "keep") return {mean, -1};
  const Eigen::Vector2d jitter =
      w.cont.edit_jitter * Eigen::Vector2d(rng.normal(), rng.normal());
  return {clamp_box(mean + jitter, w.cont.box), -1};
}

double alignment_distance(const World& w, const Triplet& t) {
  return (t.edited.coords - true_edit_mean(w, t.input, t.instruction)).norm();
}

double off_target_distance(const World& w, const Triplet& t) {
  const Eigen::Vector2d mean = true_edit_mean(w, t.input, t.instruction);
  const Eigen::Vector2d licensed = mean - t.input.coords;
  const Eigen::Vector2d delta = t.edited.coords - t.input.coords;
  if (licensed.norm() < 1e-12) return delta.norm();
  const Eigen::Vector2d u = licensed.normalized();
  return (delta - delta.dot(u) * u).norm();
}

double oracle_reward(const PreferenceOracle& oracle, const World& w,
                     const Triplet& t) {
  const double a = alignment_distance(w, t);
  const double f = off_target_distance(w, t);
  return -oracle.lambda_align * a * a - oracle.lambda_fidelity * f * f;
}

std::string render_instruction(const World& w, const EditInstruction& instr) {
  if (w.kind == WorldKind::kDiscrete) {
    if (instr.verb == "keep") return "keep the " + instr.object;
    return instr.verb + " the " + instr.object + " by " +
           std::to_string(int(instr.params[0]));
  }
  if (instr.verb == "translate") {
    const double dx = instr.params[0], dy = instr.params[1];
    const char* dir = dx < 0 ? "left" : dx > 0 ? "right" : dy < 0 ? "down"
                                                                  : "up";
    return "move the " + instr.object + " " + dir + " by " +
           format_double(std::abs(dx) + std::abs(dy));
  }
  if (instr.verb == "reflect")
    return "reflect the " + instr.object + " across the " +
           (instr.params[0] == 0.0 ? std::string("x-axis")
                                   : std::string("y-axis"));
  if (instr.verb == "scale")
    return (instr.params[1] > 0 ? "enlarge the " : "shrink the ") +
           instr.object + " by " + format_double(instr.params[0]);
  if (instr.verb == "recolor")
    return "change the " + instr.object + " to " +
           w.cont.colors[size_t(instr.params[0])];
  return "keep the " + instr.object;
}

std::optional<EditInstruction> parse_instruction(const World& w,
                                                 const std::string& text) {
  const std::vector<std::string> tok = tokenize(text);
  if (tok.empty()) return std::nullopt;
  const std::string& verb = tok[0];

  auto find_object = [&](const std::vector<std::string>& names)
      -> std::optional<std::string> {
    for (const std::string& t : tok)
      for (const std::string& n : names)
        if (t == n) return n;
    if (std::find(tok.begin(), tok.end(), "it") != tok.end())
      return names.front();
    return std::nullopt;
  };
  auto find_number = [&]() -> std::optional<double> {
    for (auto it = tok.rbegin(); it != tok.rend(); ++it)
      if (is_number_token(*it)) {
        double v = 0;
        std::from_chars(it->data(), it->data() + it->size(), v);
        return v;
      }
    return std::nullopt;
  };

  if (w.kind == WorldKind::kDiscrete) {
    auto obj = find_object({"marker"});
    if (!obj) return std::nullopt;
    if (verb == "keep") return make_keep(*obj);
    if (verb != "advance" && verb != "retreat") return std::nullopt;
    auto num = find_number();
    if (!num || *num <= 0 || *num != std::floor(*num)) return std::nullopt;
    return make_step(verb, int(*num));
  }

  auto obj = find_object({"point", "cluster"});
  if (!obj) return std::nullopt;

  if (verb == "move" || verb == "translate" || verb == "shift") {
    auto num = find_number();
    if (!num || *num <= 0) return std::nullopt;
    int dir = -1;
    for (const std::string& t : tok) {
      if (t == "left") dir = 0;
      if (t == "right") dir = 1;
      if (t == "down") dir = 2;
      if (t == "up") dir = 3;
    }
    if (dir < 0) return std::nullopt;
    return make_translate(w, *obj, dir, *num);
  }
  if (verb == "reflect" || verb == "mirror") {
    for (const std::string& t : tok) {
      if (t == "x-axis") return make_reflect(*obj, 0);
      if (t == "y-axis") return make_reflect(*obj, 1);
    }
    return std::nullopt;
  }
  if (verb == "enlarge" || verb == "shrink") {
    auto num = find_number();
    if (!num || *num <= 0) return std::nullopt;
    return make_scale(*obj, *num, verb == "enlarge");
  }
  if (verb == "change" || verb == "recolor" || verb == "paint") {
    for (size_t c = 0; c < w.cont.colors.size(); ++c)
      for (const std::string& t : tok)
        if (t == w.cont.colors[c]) return make_recolor(w.cont, *obj, int(c));
    return std::nullopt;
  }
  if (verb == "keep" || verb == "leave") return make_keep(*obj);
  return std::nullopt;
}

std::vector<DiscreteCondition> enumerate_conditions(const World& w) {
  if (w.kind != WorldKind::kDiscrete)
    throw std::invalid_argument(
        "enumerate_conditions requires the discrete world");
  std::vector<DiscreteCondition> out;
  for (int s = 0; s < w.disc.n_states; s += w.disc.input_stride)
    for (const EditInstruction& instr : discrete_instructions(w))
      out.push_back({s, instr});
  return out;
}

ConditionalTables discrete_world_tables(const World& w,
                                        double corruption_rate) {
  if (w.kind != WorldKind::kDiscrete)
    throw std::invalid_argument(
        "discrete_world_tables requires the discrete world");
  if (corruption_rate < 0.0 || corruption_rate > 1.0)
    throw std::invalid_argument("corruption_rate must be in [0, 1]");

  const int n = w.disc.n_states;
  const auto instrs = discrete_instructions(w);

  auto clean_pmf = [&](int input_state, const EditInstruction& instr,
                       int exaggerate) -> Eigen::VectorXd {
    if (w.disc.spread <= 0.0)
      return Eigen::VectorXd::Constant(n, 1.0 / double(n));
    return wrapped_round_gaussian(
        n, discrete_target(w, input_state, instr, exaggerate), w.disc.spread);
  };

  ConditionalTables tables;
  tables.conditions = enumerate_conditions(w);
  tables.probs.resize(Eigen::Index(tables.conditions.size()), n);

  for (Eigen::Index row = 0; row < tables.probs.rows(); ++row) {
    const auto& cond = tables.conditions[size_t(row)];
    const Eigen::VectorXd clean = clean_pmf(cond.input_state,
                                            cond.instruction, 1);
    const Eigen::VectorXd exaggerated =
        clean_pmf(cond.input_state, cond.instruction, 2);

    Eigen::VectorXd wrong = Eigen::VectorXd::Zero(n);
    int n_other = 0;
    for (const EditInstruction& other : instrs) {
      if (same_instruction(other, cond.instruction)) continue;
      wrong += clean_pmf(cond.input_state, other, 1);
      ++n_other;
    }
    wrong = n_other > 0 ? Eigen::VectorXd(wrong / n_other) : clean;

    Eigen::VectorXd off = Eigen::VectorXd::Zero(n);
    const int win = w.disc.off_target_window;
    for (int d = -win; d <= win; ++d)
      off[wrap_state(cond.input_state + d, n)] += 1.0 / double(2 * win + 1);

    Eigen::VectorXd row_p =
        (1.0 - corruption_rate) * clean +
        corruption_rate / 3.0 * (wrong + exaggerated + off);
    tables.probs.row(row) = (row_p / row_p.sum()).transpose();
  }
  return tables;
}

namespace {

Triplet generate_one(const World& w, double corruption_rate, Rng& rec_rng,
                     std::uint64_t seed) {
  Triplet t;
  t.seed = seed;
  t.input = random_input(w, rec_rng);
  t.instruction = random_instruction(w, rec_rng);

  const bool corrupted = rec_rng.uniform() < corruption_rate;
  if (!corrupted) {
    t.edited = true_edit(w, t.input, t.instruction, rec_rng);
    t.provenance = Provenance::kClean;
    return t;
  }

  t.provenance = Provenance::kCorrupted;
  const int kind = int(rec_rng.uniform_int(3));
  if (w.kind == WorldKind::kDiscrete) {
    const int n = w.disc.n_states;
    if (kind == 0) {  // wrong edit
      const auto instrs = discrete_instructions(w);
      std::vector<EditInstruction> others;
      for (const auto& other : instrs)
        if (!same_instruction(other, t.instruction)) others.push_back(other);
      const EditInstruction& wrong =
          others.empty() ? t.instruction
                         : others[rec_rng.uniform_int(others.size())];
      t.edited = discrete_draw(w, discrete_target(w, t.input.state, wrong),
                               rec_rng);
    } else if (kind == 1) {  // exaggerated edit
      t.edited = discrete_draw(
          w, discrete_target(w, t.input.state, t.instruction, 2), rec_rng);
    } else {  // off-target perturbation
      const int win = w.disc.off_target_window;
      const int offset =
          int(rec_rng.uniform_int(std::uint64_t(2 * win + 1))) - win;
      const int state = wrap_state(t.input.state + offset, n);
      t.edited = {state_coords(w, state), state};
    }
    return t;
  }

  if (kind == 0) {  // wrong edit
    EditInstruction wrong = t.instruction;
    for (int tries = 0; tries < 10 && same_instruction(wrong, t.instruction);
         ++tries)
      wrong = random_instruction(w, rec_rng);
    t.edited = true_edit(w, t.input, wrong, rec_rng);
  } else if (kind == 1) {  // exaggerated edit
    const Eigen::Vector2d mean = true_edit_mean(w, t.input, t.instruction);
    const Eigen::Vector2d overshoot =
        t.input.coords + 2.0 * (mean - t.input.coords);
    const Eigen::Vector2d jitter =
        w.cont.edit_jitter * Eigen::Vector2d(rec_rng.normal(),
                                             rec_rng.normal());
    t.edited = {clamp_box(overshoot + jitter, w.cont.box), -1};
  } else {  // off-target perturbation
    const Eigen::Vector2d mean = true_edit_mean(w, t.input, t.instruction);
    const Eigen::Vector2d noise =
        w.cont.off_target_std * Eigen::Vector2d(rec_rng.normal(),
                                                rec_rng.normal());
    t.edited = {clamp_box(mean + noise, w.cont.box), -1};
  }
  return t;
}

}  // namespace

std::vector<Triplet> generate_dataset(const World& w, int n,
                                      double corruption_rate, Rng rng) {
  if (n <= 0) throw std::invalid_argument("generate_dataset: n must be > 0");
  if (corruption_rate < 0.0 || corruption_rate > 1.0)
    throw std::invalid_argument("corruption_rate must be in [0, 1]");
  std::vector<Triplet> out;
  out.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    Rng rec = rng.split(std::uint64_t(i));
    out.push_back(generate_one(w, corruption_rate, rec, std::uint64_t(i)));
  }
  return out;
}

namespace {

nlohmann::json sample_to_json(const World& w, const Sample& s) {
  if (w.kind == WorldKind::kDiscrete) return s.state;
  return nlohmann::json::array({s.coords.x(), s.coords.y()});
}

Sample sample_from_json(const World& w, const nlohmann::json& j) {
  if (w.kind == WorldKind::kDiscrete) {
    const int state = j.get<int>();
    return {state_coords(w, state), state};
  }
  return {{j.at(0).get<double>(), j.at(1).get<double>()}, -1};
}

}  // namespace

void save_triplets(const std::string& path, const World& w,
                   const std::vector<Triplet>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const Triplet& t : data) {
    nlohmann::json j{
        {"world", world_name(w)},
        {"input", sample_to_json(w, t.input)},
        {"instruction",
         {{"verb", t.instruction.verb},
          {"object", t.instruction.object},
          {"params", {t.instruction.params[0], t.instruction.params[1]}},
          {"text", t.instruction.text}}},
        {"edited", sample_to_json(w, t.edited)},
        {"provenance", to_string(t.provenance)},
        {"seed", t.seed}};
    out << j.dump() << '\n';
  }
}

std::vector<Triplet> load_triplets(const std::string& path, const World& w) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<Triplet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    if (j.at("world").get<std::string>() != world_name(w))
      throw std::runtime_error("dataset world mismatch in " + path);
    Triplet t;
    t.input = sample_from_json(w, j.at("input"));
    const auto& ji = j.at("instruction");
    t.instruction.verb = ji.at("verb").get<std::string>();
    t.instruction.object = ji.at("object").get<std::string>();
    t.instruction.params = {ji.at("params").at(0).get<double>(),
                            ji.at("params").at(1).get<double>()};
    t.instruction.text = ji.at("text").get<std::string>();
    t.edited = sample_from_json(w, j.at("edited"));
    t.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    t.seed = j.at("seed").get<std::uint64_t>();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace editlab
