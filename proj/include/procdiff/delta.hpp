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

#include "procdiff/model.hpp"

namespace procdiff {

/// The (removed, added) statement sets transforming one variant into
/// another. removed and added are always disjoint.
struct Delta {
  std::string from_id;
  std::string to_id;
  StatementSet removed;
  StatementSet added;

  bool empty() const noexcept { return removed.empty() && added.empty(); }
};

/// removed = a \ b, added = b \ a.
Delta compute_delta(const Model& a, const Model& b);

enum class ApplyMode { strict, lenient };

/// Strict apply on a base that lacks a removed statement; carries the
/// missing statements so callers can report the wrong-base situation.
class DeltaApplyError : public std::runtime_error {
 public:
  explicit DeltaApplyError(StatementSet missing);

  const StatementSet& missing() const noexcept { return missing_; }

 private:
  StatementSet missing_;
};

/// result = (m \ removed) ∪ added, named after d.to_id. In strict mode
/// every removed statement must be present in m; lenient mode skips
/// missing removals and tolerates already-present additions.
Model apply_delta(const Model& m, const Delta& d, ApplyMode mode = ApplyMode::strict);

/// Swaps removed/added and from/to. An involution.
Delta invert_delta(const Delta& d);

// Delta file format (extension .pdelta):
//
//   # procdiff-delta v1
//   # from: <id>
//   # to: <id>
//   - <statement> .
//   + <statement> .
//
// Removed lines precede added lines, each group in canonical statement
// order.

std::string serialize_delta(const Delta& d);

/// Parses a .pdelta file. Raises ParseError on a bad header, a malformed
/// statement line, or a statement listed as both removed and added.
Delta parse_delta(std::string_view source);

}  // namespace procdiff
