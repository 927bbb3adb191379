// Copyright (c) 2026 editlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace editlab {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Whitespace tokenizer, lowercasing ASCII letters.
std::vector<std::string> tokenize(std::string_view text);

bool is_number_token(std::string_view tok);

}  // namespace editlab
