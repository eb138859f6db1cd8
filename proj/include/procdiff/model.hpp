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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace procdiff {

/// Returns true if `iri` is usable as a node identifier: non-empty, no
/// characters in U+0000..U+0020, no '<', '>' or '"'.
bool valid_iri(std::string_view iri) noexcept;

/// A named graph node. Two nodes are the same entity iff their IRI texts
/// are byte-equal; there is no heuristic matching anywhere in the toolkit.
class NodeId {
 public:
  explicit NodeId(std::string iri);

  const std::string& iri() const noexcept { return iri_; }

  friend bool operator==(const NodeId& a, const NodeId& b) { return a.iri_ == b.iri_; }
  friend bool operator!=(const NodeId& a, const NodeId& b) { return a.iri_ != b.iri_; }
  friend bool operator<(const NodeId& a, const NodeId& b) { return a.iri_ < b.iri_; }

 private:
  std::string iri_;
};

/// Plain UTF-8 literal content. Equality is byte-equality of the text;
/// there are no datatype or language tags.
class LiteralValue {
 public:
  explicit LiteralValue(std::string text) : text_(std::move(text)) {}

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const LiteralValue& a, const LiteralValue& b) { return a.text_ == b.text_; }
  friend bool operator!=(const LiteralValue& a, const LiteralValue& b) { return a.text_ != b.text_; }
  friend bool operator<(const LiteralValue& a, const LiteralValue& b) { return a.text_ < b.text_; }

 private:
  std::string text_;
};

// A node term and a literal term never compare equal, even with identical
// spellings: the variant index participates in comparisons (node < literal).
using Term = std::variant<NodeId, LiteralValue>;

inline bool is_node(const Term& t) noexcept { return std::holds_alternative<NodeId>(t); }
inline bool is_literal(const Term& t) noexcept { return std::holds_alternative<LiteralValue>(t); }
inline const NodeId& as_node(const Term& t) { return std::get<NodeId>(t); }
inline const LiteralValue& as_literal(const Term& t) { return std::get<LiteralValue>(t); }

/// One (entity, predicate, value) assertion. Subject and predicate are
/// always nodes; only the object position may hold a literal.
struct Statement {
  NodeId subject;
  NodeId predicate;
  Term object;
};

bool operator==(const Statement& a, const Statement& b);
inline bool operator!=(const Statement& a, const Statement& b) { return !(a == b); }

// Canonical statement order: (subject, predicate, object kind with
// node < literal, object spelling), all bytewise. The serializer and every
// table renderer rely on this being the iteration order of StatementSet.
bool operator<(const Statement& a, const Statement& b);

using StatementSet = std::set<Statement>;

/// A named, duplicate-free set of statements: one process-model variant.
/// Models are immutable values after construction; `insert` returns a new
/// value, so instances may be shared freely between threads.
class Model {
 public:
  explicit Model(std::string id);
  Model(std::string id, StatementSet statements);

  const std::string& id() const noexcept { return id_; }
  const StatementSet& statements() const noexcept { return statements_; }
  std::size_t size() const noexcept { return statements_.size(); }
  bool contains(const Statement& s) const { return statements_.count(s) != 0; }

 private:
  std::string id_;
  StatementSet statements_;
};

/// Returns a copy of `m` that also contains `s`. Inserting an already
/// present statement is a no-op (set semantics).
Model insert(const Model& m, const Statement& s);

enum class SetOp { Union, Intersection, Difference };

StatementSet set_op(const StatementSet& a, const StatementSet& b, SetOp op);
StatementSet set_union(const StatementSet& a, const StatementSet& b);
StatementSet set_intersection(const StatementSet& a, const StatementSet& b);
StatementSet set_difference(const StatementSet& a, const StatementSet& b);

/// All statements of `m` whose subject equals `entity` (possibly empty).
StatementSet statements_about(const Model& m, const NodeId& entity);

/// The set of node ids appearing in subject position.
std::set<NodeId> subjects(const Model& m);

enum class PredicateKind { structural, text, hierarchy, ignore };

/// `hierarchy` predicates also count as structural for set-level metrics.
inline bool counts_as_structural(PredicateKind k) noexcept {
  return k == PredicateKind::structural || k == PredicateKind::hierarchy;
}

const char* to_string(PredicateKind k) noexcept;

/// Maps predicates to comparison kinds. Undeclared predicates default to
/// `structural`; a predicate may be declared at most once.
class SchemaDescriptor {
 public:
  SchemaDescriptor() = default;

  /// Throws std::invalid_argument on a duplicate declaration.
  void declare(const NodeId& predicate, PredicateKind kind);

  PredicateKind kind_of(const NodeId& predicate) const;
  const std::map<NodeId, PredicateKind>& entries() const noexcept { return entries_; }

  /// Text-kind predicates in canonical (IRI) order.
  std::vector<NodeId> text_predicates() const;

  /// The first text-kind predicate whose local name (the part after the
  /// last ':', '/' or '#') is "name"; used for display labels.
  std::optional<NodeId> name_predicate() const;

 private:
  std::map<NodeId, PredicateKind> entries_;
};

}  // namespace procdiff
