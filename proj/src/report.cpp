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

#include "procdiff/report.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>

#include <json.hpp>

#include "procdiff/ntriples.hpp"
#include "procdiff/textdiff.hpp"

namespace procdiff {

using nlohmann::json;

namespace {

std::string term_spelling(const Term& t) {
  if (is_node(t)) return "<" + as_node(t).iri() + ">";
  return "\"" + escape_literal(as_literal(t).text()) + "\"";
}

// Column-aligned rows: two spaces between columns, last column unpadded.
std::string align_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 == row.size()) {
        out += row[c];
      } else {
        out += row[c];
        out.append(widths[c] - row[c].size() + 2, ' ');
      }
    }
    out += '\n';
  }
  return out;
}

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// All nodes a statement set mentions, subjects and node objects alike.
std::set<NodeId> mentioned_nodes(const std::map<Statement, Origin>& entries) {
  std::set<NodeId> nodes;
  for (const auto& [stmt, origin] : entries) {
    (void)origin;
    nodes.insert(stmt.subject);
    if (is_node(stmt.object)) nodes.insert(as_node(stmt.object));
  }
  return nodes;
}

using Adjacency = std::map<NodeId, std::vector<std::pair<NodeId, Origin>>>;

std::set<NodeId> reach(const Adjacency& adj, const NodeId& root,
                       bool follow_a, bool follow_b) {
  std::set<NodeId> visited{root};
  std::deque<NodeId> queue{root};
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const auto& [child, origin] : it->second) {
      bool follow = origin == Origin::both || (origin == Origin::only_a && follow_a) ||
                    (origin == Origin::only_b && follow_b);
      if (follow && visited.insert(child).second) queue.push_back(child);
    }
  }
  return visited;
}

bool has_cycle(const Adjacency& adj, const std::set<NodeId>& nodes) {
  // Iterative three-color DFS over the reachable subgraph.
  enum class Color { white, grey, black };
  std::map<NodeId, Color> color;
  for (const NodeId& n : nodes) color.emplace(n, Color::white);
  for (const NodeId& start : nodes) {
    if (color.at(start) != Color::white) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{start, 0}};
    color.at(start) = Color::grey;
    while (!stack.empty()) {
      auto& [n, idx] = stack.back();
      const auto it = adj.find(n);
      const auto& children = it == adj.end() ? std::vector<std::pair<NodeId, Origin>>{} : it->second;
      if (idx >= children.size()) {
        color.at(n) = Color::black;
        stack.pop_back();
        continue;
      }
      const NodeId& child = children[idx++].first;
      if (!nodes.count(child)) continue;
      Color& c = color.at(child);
      if (c == Color::grey) return true;
      if (c == Color::white) {
        c = Color::grey;
        stack.push_back({child, 0});
      }
    }
  }
  return false;
}

std::map<NodeId, std::string> resolve_labels(const std::set<NodeId>& nodes,
                                             const std::map<Statement, Origin>& entries,
                                             const SchemaDescriptor* schema) {
  std::map<NodeId, std::string> labels;
  std::optional<NodeId> name_pred =
      schema ? schema->name_predicate() : std::optional<NodeId>{};
  for (const NodeId& n : nodes) labels.emplace(n, n.iri());
  if (!name_pred) return labels;
  // First matching literal in canonical order wins when variants disagree.
  for (const auto& [stmt, origin] : entries) {
    (void)origin;
    if (stmt.predicate != *name_pred || !is_literal(stmt.object)) continue;
    auto it = labels.find(stmt.subject);
    if (it != labels.end() && it->second == stmt.subject.iri()) {
      it->second = as_literal(stmt.object).text();
    }
  }
  return labels;
}

TreeView extract_tree_impl(const std::map<Statement, Origin>& entries, const std::string& a_id,
                           const std::string& b_id, const NodeId& root, const NodeId& predicate,
                           const SchemaDescriptor* schema) {
  (void)a_id;
  (void)b_id;
  std::set<NodeId> universe = mentioned_nodes(entries);
  if (!universe.count(root)) {
    throw ReportError("tree root <" + root.iri() + "> does not appear in the statement set");
  }

  Adjacency adj;
  for (const auto& [stmt, origin] : entries) {
    if (stmt.predicate == predicate && is_node(stmt.object)) {
      adj[stmt.subject].push_back({as_node(stmt.object), origin});
    }
  }

  std::set<NodeId> reachable = reach(adj, root, true, true);

  TreeView t{root, {}, {}, {}, {}};
  for (const NodeId& n : reachable) {
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const auto& [child, origin] : it->second) {
      t.edges.push_back({n, child, origin});
    }
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const TreeEdge& x, const TreeEdge& y) {
    if (x.parent != y.parent) return x.parent < y.parent;
    return x.child < y.child;
  });

  if (has_cycle(adj, reachable)) {
    t.warnings.push_back("cycle detected below <" + root.iri() + ">; traversal truncated");
  }

  // Node origins: per-variant reachability, with a `both` override for
  // nodes touching a common edge, and a footprint fallback for nodes only
  // reachable through mixed-origin paths.
  std::set<NodeId> reach_a = reach(adj, root, true, false);
  std::set<NodeId> reach_b = reach(adj, root, false, true);
  std::set<NodeId> touches_both_edge;
  for (const TreeEdge& e : t.edges) {
    if (e.origin == Origin::both) {
      touches_both_edge.insert(e.parent);
      touches_both_edge.insert(e.child);
    }
  }
  std::set<NodeId> in_a_footprint;
  std::set<NodeId> in_b_footprint;
  for (const auto& [stmt, origin] : entries) {
    if (origin != Origin::only_b) {
      in_a_footprint.insert(stmt.subject);
      if (is_node(stmt.object)) in_a_footprint.insert(as_node(stmt.object));
    }
    if (origin != Origin::only_a) {
      in_b_footprint.insert(stmt.subject);
      if (is_node(stmt.object)) in_b_footprint.insert(as_node(stmt.object));
    }
  }
  for (const NodeId& n : reachable) {
    Origin o;
    bool a_side = reach_a.count(n) != 0;
    bool b_side = reach_b.count(n) != 0;
    if (touches_both_edge.count(n) || (a_side && b_side)) {
      o = Origin::both;
    } else if (a_side) {
      o = Origin::only_a;
    } else if (b_side) {
      o = Origin::only_b;
    } else {
      bool fa = in_a_footprint.count(n) != 0;
      bool fb = in_b_footprint.count(n) != 0;
      o = fa && fb ? Origin::both : fa ? Origin::only_a : Origin::only_b;
    }
    t.node_origins.emplace(n, o);
  }

  std::map<NodeId, std::string> all_labels = resolve_labels(universe, entries, schema);
  for (const NodeId& n : reachable) t.labels.emplace(n, all_labels.at(n));
  return t;
}

}  // namespace

TreeView extract_tree(const ComparisonModel& cm, const NodeId& root, const NodeId& predicate,
                      const SchemaDescriptor* schema) {
  return extract_tree_impl(cm.entries, cm.a_id, cm.b_id, root, predicate, schema);
}

TreeView extract_tree(const Model& m, const NodeId& root, const NodeId& predicate,
                      const SchemaDescriptor* schema) {
  std::map<Statement, Origin> entries;
  for (const Statement& s : m.statements()) entries.emplace(s, Origin::both);
  return extract_tree_impl(entries, m.id(), m.id(), root, predicate, schema);
}

std::string render_dot(const TreeView& t) {
  std::string out = "digraph comparison {\n";
  for (const auto& [node, origin] : t.node_origins) {
    out += "  \"" + node.iri() + "\" [label=\"" + dot_escape(t.labels.at(node)) + "\"";
    if (origin == Origin::only_a) out += ", style=dashed";
    if (origin == Origin::only_b) out += ", style=bold";
    out += "];\n";
  }
  for (const TreeEdge& e : t.edges) {
    out += "  \"" + e.parent.iri() + "\" -> \"" + e.child.iri() + "\"";
    if (e.origin == Origin::only_a) out += " [style=dashed]";
    if (e.origin == Origin::only_b) out += " [style=bold]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

namespace {

// Literal texts of (entity, predicate) on one side, joined canonically.
// Multi-valued attributes concatenate in statement order.
std::optional<std::string> literal_text(const StatementSet& side, const NodeId& entity,
                                        const NodeId& predicate) {
  std::string joined;
  bool found = false;
  for (const Statement& s : side) {
    if (s.subject == entity && s.predicate == predicate && is_literal(s.object)) {
      if (found) joined += '\n';
      joined += as_literal(s.object).text();
      found = true;
    }
  }
  if (!found) return std::nullopt;
  return joined;
}

}  // namespace

MetricTable changed_descriptions(const Model& a, const Model& b, const SchemaDescriptor& schema) {
  MetricTable table;
  std::set<NodeId> entities = subjects(a);
  for (const NodeId& n : subjects(b)) entities.insert(n);
  for (const NodeId& pred : schema.text_predicates()) {
    for (const NodeId& entity : entities) {
      std::optional<std::string> ta = literal_text(a.statements(), entity, pred);
      std::optional<std::string> tb = literal_text(b.statements(), entity, pred);
      if (!ta && !tb) continue;
      if (ta == tb) continue;
      double extent = 1.0;
      if (ta && tb) {
        extent = text_extent(tokenize(*ta, TokenMode::word), tokenize(*tb, TokenMode::word));
      }
      table.rows.push_back({entity, "<" + pred.iri() + ">", extent, false});
    }
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const MetricRow& x, const MetricRow& y) {
    if (x.entity != y.entity) return x.entity < y.entity;
    return x.metric < y.metric;
  });
  return table;
}

MetricTable entity_extent(const Model& a, const Model& b, const NodeId& entity,
                          const SchemaDescriptor& schema) {
  StatementSet sa = statements_about(a, entity);
  StatementSet sb = statements_about(b, entity);
  if (sa.empty() && sb.empty()) {
    throw ReportError("entity <" + entity.iri() + "> is not a subject in either model");
  }

  auto structural_only = [&schema](const StatementSet& set) {
    StatementSet out;
    for (const Statement& s : set) {
      if (counts_as_structural(schema.kind_of(s.predicate))) out.insert(s);
    }
    return out;
  };
  StatementSet structural_a = structural_only(sa);
  StatementSet structural_b = structural_only(sb);
  std::size_t uni = set_union(structural_a, structural_b).size();
  std::size_t inter = set_intersection(structural_a, structural_b).size();
  double structural = uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter) / static_cast<double>(uni);

  double text_sum = 0.0;
  std::size_t text_n = 0;
  for (const NodeId& pred : schema.text_predicates()) {
    std::optional<std::string> ta = literal_text(sa, entity, pred);
    std::optional<std::string> tb = literal_text(sb, entity, pred);
    if (!ta && !tb) continue;
    double extent = 1.0;
    if (ta && tb) {
      extent = text_extent(tokenize(*ta, TokenMode::word), tokenize(*tb, TokenMode::word));
    }
    text_sum += extent;
    ++text_n;
  }
  double text = text_n == 0 ? 0.0 : text_sum / static_cast<double>(text_n);

  MetricTable table;
  table.rows.push_back({entity, "structural_extent", structural, false});
  table.rows.push_back({entity, "text_extent", text, false});
  return table;
}

MetricTable all_entity_extents(const Model& a, const Model& b, const SchemaDescriptor& schema) {
  std::set<NodeId> entities = subjects(a);
  for (const NodeId& n : subjects(b)) entities.insert(n);
  MetricTable table;
  for (const NodeId& entity : entities) {
    MetricTable rows = entity_extent(a, b, entity, schema);
    table.rows.insert(table.rows.end(), rows.rows.begin(), rows.rows.end());
  }
  return table;
}

MetricTable aggregate_tree_extent(const TreeView& t, const Model& a, const Model& b) {
  ComparisonModel cm = compare(a, b);

  std::map<NodeId, std::pair<std::size_t, std::size_t>> per_subject;  // (changed, total)
  std::size_t changed_all = 0;
  for (const auto& [stmt, origin] : cm.entries) {
    auto& [changed, total] = per_subject[stmt.subject];
    ++total;
    if (origin != Origin::both) {
      ++changed;
      ++changed_all;
    }
  }

  Adjacency children;
  for (const TreeEdge& e : t.edges) children[e.parent].push_back({e.child, e.origin});

  MetricTable table;
  for (const auto& [node, origin] : t.node_origins) {
    (void)origin;
    double ratio;
    if (node == t.root) {
      ratio = cm.entries.empty() ? 0.0
                                 : static_cast<double>(changed_all) /
                                       static_cast<double>(cm.entries.size());
    } else {
      std::set<NodeId> subtree = reach(children, node, true, true);
      std::size_t changed = 0;
      std::size_t total = 0;
      for (const NodeId& n : subtree) {
        auto it = per_subject.find(n);
        if (it == per_subject.end()) continue;
        changed += it->second.first;
        total += it->second.second;
      }
      ratio = total == 0 ? 0.0 : static_cast<double>(changed) / static_cast<double>(total);
    }
    table.rows.push_back({node, "subtree_change_ratio", ratio, false});
  }
  return table;
}

std::string format_ratio(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  std::size_t last = s.find_last_not_of('0');
  if (last != std::string::npos && s[last] == '.') --last;
  s.erase(last + 1);
  return s;
}

namespace {

std::vector<std::string> statement_columns(const Statement& s) {
  return {"<" + s.subject.iri() + ">", "<" + s.predicate.iri() + ">", term_spelling(s.object)};
}

}  // namespace

std::string render_table(const Model& m) {
  std::vector<std::vector<std::string>> rows;
  for (const Statement& s : m.statements()) rows.push_back(statement_columns(s));
  return align_rows(rows);
}

std::string render_table(const ComparisonModel& cm) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [stmt, origin] : cm.entries) {
    std::vector<std::string> row{to_string(origin)};
    for (auto& col : statement_columns(stmt)) row.push_back(std::move(col));
    rows.push_back(std::move(row));
  }
  return align_rows(rows);
}

std::string render_table(const ThreeWayModel& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [stmt, presence] : t.entries) {
    std::vector<std::string> row{to_string(category_of(presence))};
    for (auto& col : statement_columns(stmt)) row.push_back(std::move(col));
    rows.push_back(std::move(row));
  }
  return align_rows(rows);
}

std::string render_table(const std::vector<EntityChange>& changes) {
  std::vector<std::vector<std::string>> rows;
  for (const EntityChange& ec : changes) {
    std::string preds;
    for (const NodeId& p : ec.changed_predicates) {
      if (!preds.empty()) preds += ", ";
      preds += "<" + p.iri() + ">";
    }
    if (preds.empty()) preds = "-";
    rows.push_back({"<" + ec.entity.iri() + ">", to_string(ec.status), preds});
  }
  return align_rows(rows);
}

std::string render_table(const TreeView& t) {
  // Indented outline; repeated nodes (extra parents, cycles) get a '*'
  // and are not expanded again.
  Adjacency children;
  for (const TreeEdge& e : t.edges) children[e.parent].push_back({e.child, e.origin});

  std::string out;
  std::set<NodeId> expanded;
  auto display = [&t](const NodeId& n) {
    const std::string& label = t.labels.at(n);
    return label == n.iri() ? "<" + n.iri() + ">" : label;
  };

  struct Frame {
    NodeId node;
    std::size_t depth;
  };
  std::vector<Frame> stack{{t.root, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    out.append(f.depth * 2, ' ');
    out += display(f.node) + " [" + to_string(t.node_origins.at(f.node)) + "]";
    bool repeat = !expanded.insert(f.node).second;
    if (repeat) out += " *";
    out += '\n';
    if (repeat) continue;
    auto it = children.find(f.node);
    if (it == children.end()) continue;
    // push in reverse so canonical child order pops first
    for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit) {
      stack.push_back({rit->first, f.depth + 1});
    }
  }
  for (const std::string& w : t.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string render_table(const MetricTable& t) {
  std::vector<std::vector<std::string>> rows;
  for (const MetricRow& r : t.rows) {
    std::string value =
        r.count ? std::to_string(static_cast<long long>(r.value)) : format_ratio(r.value);
    rows.push_back({"<" + r.entity.iri() + ">", r.metric, std::move(value)});
  }
  return align_rows(rows);
}

namespace {

json statement_json(const Statement& s) {
  json j;
  j["subject"] = s.subject.iri();
  j["predicate"] = s.predicate.iri();
  if (is_node(s.object)) {
    j["object"] = {{"type", "node"}, {"value", as_node(s.object).iri()}};
  } else {
    j["object"] = {{"type", "literal"}, {"value", as_literal(s.object).text()}};
  }
  return j;
}

void apply_refs(json& j, const ModelRefs& refs) {
  if (refs.a) j["a"] = *refs.a;
  if (refs.b) j["b"] = *refs.b;
  if (refs.ancestor) j["ancestor"] = *refs.ancestor;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string render_json(const Model& m) {
  json j;
  j["kind"] = "statements";
  j["a"] = m.id();
  j["rows"] = json::array();
  for (const Statement& s : m.statements()) j["rows"].push_back(statement_json(s));
  return dump(j);
}

std::string render_json(const ComparisonModel& cm) {
  json j;
  j["kind"] = "statements";
  j["a"] = cm.a_id;
  j["b"] = cm.b_id;
  j["rows"] = json::array();
  for (const auto& [stmt, origin] : cm.entries) {
    json row = statement_json(stmt);
    row["origin"] = to_string(origin);
    j["rows"].push_back(std::move(row));
  }
  return dump(j);
}

std::string render_json(const ThreeWayModel& t) {
  json j;
  j["kind"] = "statements";
  j["ancestor"] = t.ancestor_id;
  j["a"] = t.a_id;
  j["b"] = t.b_id;
  j["rows"] = json::array();
  for (const auto& [stmt, presence] : t.entries) {
    json row = statement_json(stmt);
    row["category"] = to_string(category_of(presence));
    j["rows"].push_back(std::move(row));
  }
  return dump(j);
}

std::string render_json(const std::vector<EntityChange>& changes, const ModelRefs& refs) {
  json j;
  j["kind"] = "entities";
  apply_refs(j, refs);
  j["rows"] = json::array();
  for (const EntityChange& ec : changes) {
    json row;
    row["entity"] = ec.entity.iri();
    row["status"] = to_string(ec.status);
    row["changed_predicates"] = json::array();
    for (const NodeId& p : ec.changed_predicates) row["changed_predicates"].push_back(p.iri());
    j["rows"].push_back(std::move(row));
  }
  return dump(j);
}

std::string render_json(const TreeView& t, const ModelRefs& refs) {
  json j;
  j["kind"] = "tree";
  apply_refs(j, refs);
  j["root"] = t.root.iri();
  j["nodes"] = json::array();
  for (const auto& [node, origin] : t.node_origins) {
    json n;
    n["id"] = node.iri();
    n["label"] = t.labels.at(node);
    n["origin"] = to_string(origin);
    j["nodes"].push_back(std::move(n));
  }
  j["edges"] = json::array();
  for (const TreeEdge& e : t.edges) {
    json edge;
    edge["parent"] = e.parent.iri();
    edge["child"] = e.child.iri();
    edge["origin"] = to_string(e.origin);
    j["edges"].push_back(std::move(edge));
  }
  if (!t.warnings.empty()) j["warnings"] = t.warnings;
  return dump(j);
}

std::string render_json(const MetricTable& t, const ModelRefs& refs) {
  json j;
  j["kind"] = "metrics";
  apply_refs(j, refs);
  j["rows"] = json::array();
  for (const MetricRow& r : t.rows) {
    json row;
    row["entity"] = r.entity.iri();
    row["metric"] = r.metric;
    if (r.count) {
      row["value"] = static_cast<long long>(r.value);
    } else {
      row["value"] = r.value;
    }
    j["rows"].push_back(std::move(row));
  }
  return dump(j);
}

}  // namespace procdiff
