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

#include "procdiff/compare.hpp"

#include <algorithm>

namespace procdiff {

const char* to_string(Origin o) noexcept {
  switch (o) {
    case Origin::only_a: return "only_a";
    case Origin::only_b: return "only_b";
    case Origin::both: return "both";
  }
  return "both";
}

std::size_t ComparisonModel::count(Origin o) const {
  std::size_t n = 0;
  for (const auto& [stmt, origin] : entries) {
    (void)stmt;
    if (origin == o) ++n;
  }
  return n;
}

bool ComparisonModel::identical() const {
  for (const auto& [stmt, origin] : entries) {
    (void)stmt;
    if (origin != Origin::both) return false;
  }
  return true;
}

StatementSet ComparisonModel::side_a() const {
  StatementSet out;
  for (const auto& [stmt, origin] : entries) {
    if (origin != Origin::only_b) out.insert(stmt);
  }
  return out;
}

StatementSet ComparisonModel::side_b() const {
  StatementSet out;
  for (const auto& [stmt, origin] : entries) {
    if (origin != Origin::only_a) out.insert(stmt);
  }
  return out;
}

ComparisonModel compare(const Model& a, const Model& b) {
  ComparisonModel cm{a.id(), b.id(), {}};
  auto ia = a.statements().begin();
  auto ib = b.statements().begin();
  const auto ea = a.statements().end();
  const auto eb = b.statements().end();
  auto out = cm.entries.end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && *ia < *ib)) {
      out = cm.entries.emplace_hint(out, *ia++, Origin::only_a);
    } else if (ia == ea || *ib < *ia) {
      out = cm.entries.emplace_hint(out, *ib++, Origin::only_b);
    } else {
      out = cm.entries.emplace_hint(out, *ia, Origin::both);
      ++ia;
      ++ib;
    }
  }
  return cm;
}

ChangeCategory category_of(const Presence& p) {
  if (p.in_ancestor) {
    if (p.in_a && p.in_b) return ChangeCategory::unchanged;
    if (p.in_b) return ChangeCategory::removed_in_a;
    if (p.in_a) return ChangeCategory::removed_in_b;
    return ChangeCategory::removed_in_both;
  }
  if (p.in_a && p.in_b) return ChangeCategory::added_in_both;
  if (p.in_a) return ChangeCategory::added_in_a;
  if (p.in_b) return ChangeCategory::added_in_b;
  throw std::invalid_argument("presence vector with no flags set");
}

const char* to_string(ChangeCategory c) noexcept {
  switch (c) {
    case ChangeCategory::unchanged: return "unchanged";
    case ChangeCategory::removed_in_a: return "removed_in_a";
    case ChangeCategory::removed_in_b: return "removed_in_b";
    case ChangeCategory::removed_in_both: return "removed_in_both";
    case ChangeCategory::added_in_a: return "added_in_a";
    case ChangeCategory::added_in_b: return "added_in_b";
    case ChangeCategory::added_in_both: return "added_in_both";
  }
  return "unchanged";
}

std::size_t ThreeWayModel::count(ChangeCategory c) const {
  std::size_t n = 0;
  for (const auto& [stmt, presence] : entries) {
    (void)stmt;
    if (category_of(presence) == c) ++n;
  }
  return n;
}

StatementSet ThreeWayModel::project_ancestor() const {
  StatementSet out;
  for (const auto& [stmt, p] : entries) {
    if (p.in_ancestor) out.insert(stmt);
  }
  return out;
}

StatementSet ThreeWayModel::project_a() const {
  StatementSet out;
  for (const auto& [stmt, p] : entries) {
    if (p.in_a) out.insert(stmt);
  }
  return out;
}

StatementSet ThreeWayModel::project_b() const {
  StatementSet out;
  for (const auto& [stmt, p] : entries) {
    if (p.in_b) out.insert(stmt);
  }
  return out;
}

ThreeWayModel classify3(const Model& ancestor, const Model& a, const Model& b) {
  ThreeWayModel t{ancestor.id(), a.id(), b.id(), {}};
  auto mark = [&t](const StatementSet& set, bool Presence::*flag) {
    for (const Statement& s : set) {
      auto [it, inserted] = t.entries.emplace(s, Presence{});
      (void)inserted;
      it->second.*flag = true;
    }
  };
  mark(ancestor.statements(), &Presence::in_ancestor);
  mark(a.statements(), &Presence::in_a);
  mark(b.statements(), &Presence::in_b);
  return t;
}

ComparisonModel project_two_way(const ThreeWayModel& t) {
  ComparisonModel cm{t.a_id, t.b_id, {}};
  for (const auto& [stmt, p] : t.entries) {
    if (p.in_a && p.in_b) {
      cm.entries.emplace(stmt, Origin::both);
    } else if (p.in_a) {
      cm.entries.emplace(stmt, Origin::only_a);
    } else if (p.in_b) {
      cm.entries.emplace(stmt, Origin::only_b);
    }
    // ancestor-only entries vanish from the two-way view
  }
  return cm;
}

const char* to_string(EntityStatus s) noexcept {
  switch (s) {
    case EntityStatus::added: return "added";
    case EntityStatus::removed: return "removed";
    case EntityStatus::modified: return "modified";
    case EntityStatus::unchanged: return "unchanged";
  }
  return "unchanged";
}

namespace {

// Statements grouped by subject; statement order within each group stays
// canonical.
std::map<NodeId, StatementSet> by_subject(const StatementSet& set) {
  std::map<NodeId, StatementSet> out;
  for (const Statement& s : set) out[s.subject].insert(s);
  return out;
}

std::set<NodeId> predicates_that_differ(const StatementSet& sa, const StatementSet& sb) {
  std::set<NodeId> out;
  auto by_pred = [](const StatementSet& set) {
    std::map<NodeId, StatementSet> groups;
    for (const Statement& s : set) groups[s.predicate].insert(s);
    return groups;
  };
  std::map<NodeId, StatementSet> pa = by_pred(sa);
  std::map<NodeId, StatementSet> pb = by_pred(sb);
  for (const auto& [pred, stmts] : pa) {
    auto it = pb.find(pred);
    if (it == pb.end() || it->second != stmts) out.insert(pred);
  }
  for (const auto& [pred, stmts] : pb) {
    (void)stmts;
    if (!pa.count(pred)) out.insert(pred);
  }
  return out;
}

}  // namespace

std::vector<EntityChange> entity_changes(const Model& a, const Model& b) {
  std::map<NodeId, StatementSet> ga = by_subject(a.statements());
  std::map<NodeId, StatementSet> gb = by_subject(b.statements());

  std::vector<EntityChange> out;
  auto ia = ga.begin();
  auto ib = gb.begin();
  while (ia != ga.end() || ib != gb.end()) {
    if (ib == gb.end() || (ia != ga.end() && ia->first < ib->first)) {
      out.push_back({ia->first, EntityStatus::removed, predicates_that_differ(ia->second, {})});
      ++ia;
    } else if (ia == ga.end() || ib->first < ia->first) {
      out.push_back({ib->first, EntityStatus::added, predicates_that_differ({}, ib->second)});
      ++ib;
    } else {
      EntityStatus status =
          ia->second == ib->second ? EntityStatus::unchanged : EntityStatus::modified;
      std::set<NodeId> changed;
      if (status == EntityStatus::modified) {
        changed = predicates_that_differ(ia->second, ib->second);
      }
      out.push_back({ia->first, status, std::move(changed)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::vector<EntityChange> entity_changes(const ComparisonModel& cm) {
  return entity_changes(Model(cm.a_id.empty() ? "a" : cm.a_id, cm.side_a()),
                        Model(cm.b_id.empty() ? "b" : cm.b_id, cm.side_b()));
}

bool ConflictReport::is_conflict(const NodeId& entity) const {
  for (const Conflict& c : conflicts) {
    if (c.entity == entity) return true;
  }
  return false;
}

ConflictReport conflicts(const ThreeWayModel& t) {
  // Branch deltas per subject, straight from the presence vectors.
  std::map<NodeId, EntityDelta> a_deltas;
  std::map<NodeId, EntityDelta> b_deltas;
  for (const auto& [stmt, p] : t.entries) {
    if (p.in_ancestor && !p.in_a) a_deltas[stmt.subject].removed.insert(stmt);
    if (!p.in_ancestor && p.in_a) a_deltas[stmt.subject].added.insert(stmt);
    if (p.in_ancestor && !p.in_b) b_deltas[stmt.subject].removed.insert(stmt);
    if (!p.in_ancestor && p.in_b) b_deltas[stmt.subject].added.insert(stmt);
  }

  ConflictReport report;
  for (const auto& [entity, da] : a_deltas) {
    auto it = b_deltas.find(entity);
    if (it == b_deltas.end()) continue;  // changed in A only
    const EntityDelta& db = it->second;
    if (da == db) {
      report.convergent.insert(entity);
    } else {
      report.conflicts.push_back({entity, da, db});
    }
  }
  return report;
}

double changeset_similarity(const Delta& d1, const Delta& d2) {
  StatementSet f1 = set_union(d1.removed, d1.added);
  StatementSet f2 = set_union(d2.removed, d2.added);
  if (f1.empty() && f2.empty()) return 1.0;
  std::size_t inter = set_intersection(f1, f2).size();
  std::size_t uni = set_union(f1, f2).size();
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace procdiff
