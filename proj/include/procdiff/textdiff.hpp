// Copyright 2026 the procdiff authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace procdiff {

enum class TokenMode { word, line };

/// Tokenized text. Word mode splits on maximal whitespace runs; line mode
/// splits on physical lines (a trailing CR per line is stripped). Joining
/// the tokens with the mode's separator and re-tokenizing is the identity.
struct TokenSequence {
  TokenMode mode;
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
};

TokenSequence tokenize(std::string_view text, TokenMode mode);

enum class EditKind { keep, remove, insert };

struct EditOp {
  EditKind kind;
  std::string token;
};

/// Ordered edit operations between two token sequences. Keeps plus removes
/// replay the left side; keeps plus inserts replay the right side. The kept
/// tokens form a longest common subsequence.
struct EditScript {
  std::vector<EditOp> ops;

  std::size_t kept() const;
  std::vector<std::string> replay_left() const;
  std::vector<std::string> replay_right() const;
};

class TextDiffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LCS diff via the standard dynamic program; deterministic tie-breaking
/// (removals preferred). Throws TextDiffError on a mode mismatch.
EditScript diff_text(const TokenSequence& a, const TokenSequence& b);

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

/// Change extent 1 - 2|LCS|/(|a|+|b|), in [0,1]; 0 when both sequences are
/// empty. Throws TextDiffError on a mode mismatch.
double text_extent(const TokenSequence& a, const TokenSequence& b);

}  // namespace procdiff
