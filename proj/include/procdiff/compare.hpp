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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "procdiff/delta.hpp"
#include "procdiff/model.hpp"

namespace procdiff {

/// Whether a statement is exclusive to one variant or common to both.
enum class Origin { only_a, only_b, both };

const char* to_string(Origin o) noexcept;

/// Union of two variants' statements, each decorated with its origin.
/// only_a ∪ both reconstructs A exactly; only_b ∪ both reconstructs B.
struct ComparisonModel {
  std::string a_id;
  std::string b_id;
  std::map<Statement, Origin> entries;  // canonical statement order

  std::size_t count(Origin o) const;
  bool identical() const;  // no only_a / only_b entries
  StatementSet side_a() const;
  StatementSet side_b() const;
};

ComparisonModel compare(const Model& a, const Model& b);

/// Membership of one statement across (ancestor, A, B). At least one flag
/// is always set.
struct Presence {
  bool in_ancestor = false;
  bool in_a = false;
  bool in_b = false;

  friend bool operator==(const Presence& x, const Presence& y) {
    return x.in_ancestor == y.in_ancestor && x.in_a == y.in_a && x.in_b == y.in_b;
  }
};

/// The seven change categories a presence vector can fall into.
enum class ChangeCategory {
  unchanged,        // (1,1,1)
  removed_in_a,     // (1,0,1)
  removed_in_b,     // (1,1,0)
  removed_in_both,  // (1,0,0)
  added_in_a,       // (0,1,0)
  added_in_b,       // (0,0,1)
  added_in_both,    // (0,1,1)
};

constexpr int kChangeCategoryCount = 7;

ChangeCategory category_of(const Presence& p);
const char* to_string(ChangeCategory c) noexcept;

/// Union of ancestor, A and B with per-statement presence vectors.
struct ThreeWayModel {
  std::string ancestor_id;
  std::string a_id;
  std::string b_id;
  std::map<Statement, Presence> entries;

  std::size_t count(ChangeCategory c) const;
  /// The statements present in the given input (projection).
  StatementSet project_ancestor() const;
  StatementSet project_a() const;
  StatementSet project_b() const;
};

ThreeWayModel classify3(const Model& ancestor, const Model& a, const Model& b);

/// Drops the ancestor column: entries present in A or B keep their two-way
/// origin; ancestor-only entries disappear. Equals compare(A, B).
ComparisonModel project_two_way(const ThreeWayModel& t);

enum class EntityStatus { added, removed, modified, unchanged };

const char* to_string(EntityStatus s) noexcept;

/// Per-subject rollup of a two-way comparison.
struct EntityChange {
  NodeId entity;
  EntityStatus status;
  std::set<NodeId> changed_predicates;
};

std::vector<EntityChange> entity_changes(const Model& a, const Model& b);
std::vector<EntityChange> entity_changes(const ComparisonModel& cm);

/// One branch's changes to a single entity relative to the ancestor.
struct EntityDelta {
  StatementSet removed;
  StatementSet added;

  bool empty() const noexcept { return removed.empty() && added.empty(); }
  friend bool operator==(const EntityDelta& x, const EntityDelta& y) {
    return x.removed == y.removed && x.added == y.added;
  }
};

struct Conflict {
  NodeId entity;
  EntityDelta a_changes;
  EntityDelta b_changes;
};

/// Entities changed in both branches: `conflicts` where the branch change
/// sets differ, `convergent` where they are identical.
struct ConflictReport {
  std::vector<Conflict> conflicts;  // sorted by entity
  std::set<NodeId> convergent;

  bool is_conflict(const NodeId& entity) const;
};

ConflictReport conflicts(const ThreeWayModel& t);

/// Jaccard similarity of the deltas' statement footprints
/// (removed ∪ added); 1 when both footprints are empty.
double changeset_similarity(const Delta& d1, const Delta& d2);

}  // namespace procdiff
