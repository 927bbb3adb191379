// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "editlab/instructions.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "editlab/strutil.hpp"

namespace editlab {

std::string to_string(Tag t) {
  switch (t) {
    case Tag::kVerb: return "VERB";
    case Tag::kDet: return "DET";
    case Tag::kNoun: return "NOUN";
    case Tag::kPrep: return "PREP";
    case Tag::kAdj: return "ADJ";
    case Tag::kNum: return "NUM";
    case Tag::kOther: return "OTHER";
  }
  return "OTHER";
}

std::string Lexicon::default_path() {
  return std::string(EDITLAB_DATA_DIR) + "/lexicon.json";
}

std::string default_corpus_path() {
  return std::string(EDITLAB_DATA_DIR) + "/corpus.txt";
}

std::string default_corpus_tags_path() {
  return std::string(EDITLAB_DATA_DIR) + "/corpus_tags.jsonl";
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read lexicon " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported lexicon version in " + path);

  Lexicon lex;
  for (const auto& entry : j.at("verb_pairs")) {
    const std::string a = entry.at(0).get<std::string>();
    const std::string b = entry.at(1).get<std::string>();
    lex.verb_pairs[a] = b;
    lex.verb_pairs[b] = a;
    if (entry.size() > 2 && entry.at(2).get<std::string>() == "direction") {
      lex.rewrite_direction.insert(a);
      lex.rewrite_direction.insert(b);
    }
  }
  for (const auto& entry : j.at("direction_pairs")) {
    const std::string a = entry.at(0).get<std::string>();
    const std::string b = entry.at(1).get<std::string>();
    lex.direction_pairs[a] = b;
    lex.direction_pairs[b] = a;
  }
  auto read_set = [&](const char* key, std::set<std::string>& into) {
    for (const auto& s : j.at(key)) into.insert(s.get<std::string>());
  };
  read_set("verbs", lex.verbs);
  read_set("determiners", lex.determiners);
  read_set("prepositions", lex.prepositions);
  read_set("nouns", lex.nouns);
  read_set("adjectives", lex.adjectives);
  for (const auto& [a, b] : lex.verb_pairs) {
    lex.verbs.insert(a);
    lex.verbs.insert(b);
  }
  return lex;
}

namespace {

bool is_number_word(const std::string& w) {
  static const std::set<std::string> words = {
      "one", "two", "three", "four", "five",
      "six", "seven", "eight", "nine", "ten"};
  return words.count(w) > 0;
}

}  // namespace

TaggedInstruction tag(const std::string& text, const Lexicon& lex) {
  TaggedInstruction out;
  const std::vector<std::string> tokens = tokenize(text);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& w = tokens[i];
    Tag t = Tag::kOther;
    if (i == 0 && lex.verbs.count(w)) {
      t = Tag::kVerb;
    } else if (lex.determiners.count(w)) {
      t = Tag::kDet;
    } else if (lex.prepositions.count(w)) {
      t = Tag::kPrep;
    } else if (is_number_token(w) || is_number_word(w)) {
      t = Tag::kNum;
    } else if (lex.adjectives.count(w)) {
      t = Tag::kAdj;
    } else if (lex.nouns.count(w)) {
      t = Tag::kNoun;
    }
    out.tokens.push_back({w, t});
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

/// The invertible template: VERB [DET] (ADJ|NUM)* NOUN ... -- a noun phrase
/// must directly follow the verb.
bool has_noun_phrase(const TaggedInstruction& tagged) {
  size_t i = 1;
  if (i < tagged.tokens.size() && tagged.tokens[i].tag == Tag::kDet) ++i;
  while (i < tagged.tokens.size() && (tagged.tokens[i].tag == Tag::kAdj ||
                                      tagged.tokens[i].tag == Tag::kNum))
    ++i;
  return i < tagged.tokens.size() && tagged.tokens[i].tag == Tag::kNoun;
}

}  // namespace

std::optional<std::string> invert(const std::string& text, const Lexicon& lex) {
  const TaggedInstruction tagged = tag(text, lex);
  if (tagged.tokens.empty() || tagged.tokens[0].tag != Tag::kVerb)
    return std::nullopt;
  const std::string& verb = tagged.tokens[0].word;
  const auto pair_it = lex.verb_pairs.find(verb);
  if (pair_it == lex.verb_pairs.end()) return std::nullopt;
  if (!has_noun_phrase(tagged)) return std::nullopt;

  const bool rewrite_dirs = lex.rewrite_direction.count(verb) > 0;
  std::vector<std::string> words;
  words.push_back(pair_it->second);
  for (size_t i = 1; i < tagged.tokens.size(); ++i) {
    const TaggedToken& tok = tagged.tokens[i];
    if (tok.tag == Tag::kDet) {
      words.push_back("the");
    } else if (rewrite_dirs && lex.direction_pairs.count(tok.word)) {
      words.push_back(lex.direction_pairs.at(tok.word));
    } else {
      words.push_back(tok.word);
    }
  }
  return join(words);
}

std::string normalize_determiners(const std::string& text, const Lexicon& lex) {
  const TaggedInstruction tagged = tag(text, lex);
  std::vector<std::string> words;
  for (const TaggedToken& tok : tagged.tokens)
    words.push_back(tok.tag == Tag::kDet ? "the" : tok.word);
  return join(words);
}

bool roundtrip_check(const std::string& text, const Lexicon& lex) {
  const auto once = invert(text, lex);
  if (!once)
    throw std::invalid_argument("roundtrip_check: '" + text +
                                "' is not invertible");
  const auto twice = invert(*once, lex);
  return twice && *twice == normalize_determiners(text, lex);
}

std::pair<std::vector<Triplet>, AugmentStats> augment(
    const std::vector<Triplet>& data, const Lexicon& lex, const World& world) {
  std::vector<Triplet> out;
  out.reserve(data.size() * 2);
  AugmentStats stats;
  stats.input_count = data.size();

  for (const Triplet& t : data) {
    out.push_back(t);
    const auto inverse = invert(t.instruction.text, lex);
    if (!inverse) continue;
    auto parsed = parse_instruction(world, *inverse);
    if (!parsed) continue;  // inverse is not executable in this world
    parsed->text = *inverse;

    Triplet reversed;
    reversed.input = t.edited;
    reversed.instruction = *parsed;
    reversed.edited = t.input;
    reversed.provenance = Provenance::kCycleAugmented;
    reversed.seed = t.seed;
    out.push_back(std::move(reversed));
    ++stats.reversed_count;
  }
  stats.invertible_fraction =
      stats.input_count == 0
          ? 0.0
          : double(stats.reversed_count) / double(stats.input_count);
  return {std::move(out), stats};
}

std::vector<std::string> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read corpus " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace editlab
