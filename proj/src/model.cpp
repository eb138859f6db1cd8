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

#include "procdiff/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace procdiff {

bool valid_iri(std::string_view iri) noexcept {
  if (iri.empty()) return false;
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"') return false;
  }
  return true;
}

NodeId::NodeId(std::string iri) : iri_(std::move(iri)) {
  if (!valid_iri(iri_)) {
    throw std::invalid_argument("invalid node iri: '" + iri_ + "'");
  }
}

bool operator==(const Statement& a, const Statement& b) {
  return a.subject == b.subject && a.predicate == b.predicate && a.object == b.object;
}

bool operator<(const Statement& a, const Statement& b) {
  if (a.subject != b.subject) return a.subject < b.subject;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return a.object < b.object;  // variant orders node < literal, then spelling
}

Model::Model(std::string id) : id_(std::move(id)) {
  if (id_.empty()) throw std::invalid_argument("model id must be non-empty");
}

Model::Model(std::string id, StatementSet statements)
    : id_(std::move(id)), statements_(std::move(statements)) {
  if (id_.empty()) throw std::invalid_argument("model id must be non-empty");
}

Model insert(const Model& m, const Statement& s) {
  StatementSet out = m.statements();
  out.insert(s);
  return Model(m.id(), std::move(out));
}

StatementSet set_union(const StatementSet& a, const StatementSet& b) {
  StatementSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

StatementSet set_intersection(const StatementSet& a, const StatementSet& b) {
  StatementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

StatementSet set_difference(const StatementSet& a, const StatementSet& b) {
  StatementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

StatementSet set_op(const StatementSet& a, const StatementSet& b, SetOp op) {
  switch (op) {
    case SetOp::Union: return set_union(a, b);
    case SetOp::Intersection: return set_intersection(a, b);
    case SetOp::Difference: return set_difference(a, b);
  }
  throw std::logic_error("unknown set operation");
}

StatementSet statements_about(const Model& m, const NodeId& entity) {
  StatementSet out;
  for (const Statement& s : m.statements()) {
    if (s.subject == entity) out.insert(s);
  }
  return out;
}

std::set<NodeId> subjects(const Model& m) {
  std::set<NodeId> out;
  for (const Statement& s : m.statements()) out.insert(s.subject);
  return out;
}

const char* to_string(PredicateKind k) noexcept {
  switch (k) {
    case PredicateKind::structural: return "structural";
    case PredicateKind::text: return "text";
    case PredicateKind::hierarchy: return "hierarchy";
    case PredicateKind::ignore: return "ignore";
  }
  return "structural";
}

void SchemaDescriptor::declare(const NodeId& predicate, PredicateKind kind) {
  auto [it, inserted] = entries_.emplace(predicate, kind);
  (void)it;
  if (!inserted) {
    throw std::invalid_argument("duplicate schema declaration for predicate <" +
                                predicate.iri() + ">");
  }
}

PredicateKind SchemaDescriptor::kind_of(const NodeId& predicate) const {
  auto it = entries_.find(predicate);
  return it == entries_.end() ? PredicateKind::structural : it->second;
}

std::vector<NodeId> SchemaDescriptor::text_predicates() const {
  std::vector<NodeId> out;
  for (const auto& [pred, kind] : entries_) {
    if (kind == PredicateKind::text) out.push_back(pred);
  }
  return out;
}

std::optional<NodeId> SchemaDescriptor::name_predicate() const {
  for (const auto& [pred, kind] : entries_) {
    if (kind != PredicateKind::text) continue;
    const std::string& iri = pred.iri();
    auto pos = iri.find_last_of(":/#");
    std::string local = pos == std::string::npos ? iri : iri.substr(pos + 1);
    if (local == "name") return pred;
  }
  return std::nullopt;
}

}  // namespace procdiff
