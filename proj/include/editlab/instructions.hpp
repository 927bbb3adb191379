// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "editlab/worlds.hpp"

namespace editlab {

enum class Tag { kVerb, kDet, kNoun, kPrep, kAdj, kNum, kOther };

std::string to_string(Tag t);

struct TaggedToken {
  std::string word;
  Tag tag = Tag::kOther;
};

struct TaggedInstruction {
  std::vector<TaggedToken> tokens;
};

/// Closed vocabulary driving the tagger and the inversion rules.
///
/// verb_pairs is a symmetric involution (pair(pair(v)) == v); verbs listed
/// in rewrite_direction take direction-word antonyms on inversion ("right"
/// becomes "left") instead of a verb swap.
struct Lexicon {
  std::map<std::string, std::string> verb_pairs;
  std::set<std::string> rewrite_direction;
  std::map<std::string, std::string> direction_pairs;
  std::set<std::string> verbs;
  std::set<std::string> determiners;
  std::set<std::string> prepositions;
  std::set<std::string> nouns;
  std::set<std::string> adjectives;

  static Lexicon load(const std::string& path);
  static std::string default_path();
};

/// Rule-based tagging: the first token is VERB when the verb lexicon knows
/// it; later tokens are looked up as DET, PREP, NUM, ADJ, NOUN in that
/// order, with OTHER as the fallback. Never fails.
TaggedInstruction tag(const std::string& text, const Lexicon& lex);

/// Invert an instruction via the verb-pair templates. Returns the rewritten
/// text, or nullopt when no template applies (not an error). Determiners in
/// the output are normalized to "the".
std::optional<std::string> invert(const std::string& text, const Lexicon& lex);

std::string normalize_determiners(const std::string& text, const Lexicon& lex);

/// True iff invert(invert(text)) returns the determiner-normalized input.
/// Precondition: text is invertible; throws std::invalid_argument otherwise.
bool roundtrip_check(const std::string& text, const Lexicon& lex);

struct AugmentStats {
  std::size_t input_count = 0;
  std::size_t reversed_count = 0;
  double invertible_fraction = 0.0;
};

/// For every triplet whose instruction inverts and whose inverse is
/// executable in the world, append the reversed triplet
/// (edited, inverse instruction, input) tagged cycle_augmented.
std::pair<std::vector<Triplet>, AugmentStats> augment(
    const std::vector<Triplet>& data, const Lexicon& lex, const World& world);

std::vector<std::string> load_corpus(const std::string& path);
std::string default_corpus_path();
std::string default_corpus_tags_path();

}  // namespace editlab
