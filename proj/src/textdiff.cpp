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

#include "procdiff/textdiff.hpp"

#include <cctype>

namespace procdiff {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> tokens;
  if (text.empty()) return tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    tokens.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return tokens;
}

void require_same_mode(const TokenSequence& a, const TokenSequence& b) {
  if (a.mode != b.mode) {
    throw TextDiffError("cannot diff token sequences with different modes");
  }
}

// dp[i][j] = LCS length of a[i:] and b[j:], laid out row-major over
// (m+1) x (n+1).
std::vector<std::size_t> lcs_table(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  std::vector<std::size_t> dp((m + 1) * (n + 1), 0);
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      if (a[i] == b[j]) {
        dp[at(i, j)] = dp[at(i + 1, j + 1)] + 1;
      } else {
        dp[at(i, j)] = std::max(dp[at(i + 1, j)], dp[at(i, j + 1)]);
      }
    }
  }
  return dp;
}

}  // namespace

TokenSequence tokenize(std::string_view text, TokenMode mode) {
  return TokenSequence{mode, mode == TokenMode::word ? split_words(text) : split_lines(text)};
}

std::size_t EditScript::kept() const {
  std::size_t n = 0;
  for (const EditOp& op : ops) {
    if (op.kind == EditKind::keep) ++n;
  }
  return n;
}

std::vector<std::string> EditScript::replay_left() const {
  std::vector<std::string> out;
  for (const EditOp& op : ops) {
    if (op.kind != EditKind::insert) out.push_back(op.token);
  }
  return out;
}

std::vector<std::string> EditScript::replay_right() const {
  std::vector<std::string> out;
  for (const EditOp& op : ops) {
    if (op.kind != EditKind::remove) out.push_back(op.token);
  }
  return out;
}

EditScript diff_text(const TokenSequence& a, const TokenSequence& b) {
  require_same_mode(a, b);
  const std::vector<std::string>& ta = a.tokens;
  const std::vector<std::string>& tb = b.tokens;
  const std::size_t m = ta.size();
  const std::size_t n = tb.size();
  std::vector<std::size_t> dp = lcs_table(ta, tb);
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };

  EditScript script;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < m && j < n) {
    if (ta[i] == tb[j]) {
      script.ops.push_back({EditKind::keep, ta[i]});
      ++i;
      ++j;
    } else if (dp[at(i + 1, j)] >= dp[at(i, j + 1)]) {
      script.ops.push_back({EditKind::remove, ta[i]});
      ++i;
    } else {
      script.ops.push_back({EditKind::insert, tb[j]});
      ++j;
    }
  }
  for (; i < m; ++i) script.ops.push_back({EditKind::remove, ta[i]});
  for (; j < n; ++j) script.ops.push_back({EditKind::insert, tb[j]});
  return script;
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  require_same_mode(a, b);
  if (a.tokens.empty() || b.tokens.empty()) return 0;
  return lcs_table(a.tokens, b.tokens)[0];
}

double text_extent(const TokenSequence& a, const TokenSequence& b) {
  require_same_mode(a, b);
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 0.0;
  const std::size_t lcs = lcs_length(a, b);
  return 1.0 - (2.0 * static_cast<double>(lcs)) / static_cast<double>(total);
}

}  // namespace procdiff
