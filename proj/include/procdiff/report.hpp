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
#include <stdexcept>
#include <string>
#include <vector>

#include "procdiff/compare.hpp"
#include "procdiff/model.hpp"

namespace procdiff {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreeEdge {
  NodeId parent;
  NodeId child;
  Origin origin;
};

/// A hierarchy extracted from a statement set by following one predicate
/// from a root. Every node is reachable from the root; multi-parent nodes
/// appear once with all their edges; cycles terminate the traversal and
/// leave a warning.
struct TreeView {
  NodeId root;
  std::vector<TreeEdge> edges;  // sorted by (parent, child)
  std::map<NodeId, Origin> node_origins;
  std::map<NodeId, std::string> labels;  // display labels, IRI fallback
  std::vector<std::string> warnings;
};

/// Breadth-first extraction over `predicate` edges from `root`. The root
/// must appear in the statement set (as subject or object). Labels resolve
/// through the schema's name predicate when one is declared.
TreeView extract_tree(const ComparisonModel& cm, const NodeId& root, const NodeId& predicate,
                      const SchemaDescriptor* schema = nullptr);

/// Plain-model variant: every node and edge carries origin `both`.
TreeView extract_tree(const Model& m, const NodeId& root, const NodeId& predicate,
                      const SchemaDescriptor* schema = nullptr);

/// DOT rendering of a tree comparison. Elements only in the first variant
/// are dashed, elements only in the second are bold, common elements use
/// the default style. Output is byte-deterministic: two-space indentation,
/// node declarations before edges, both in bytewise order.
std::string render_dot(const TreeView& t);

/// One metric value for one entity. `count` switches integer formatting.
struct MetricRow {
  NodeId entity;
  std::string metric;
  double value = 0.0;
  bool count = false;
};

struct MetricTable {
  std::vector<MetricRow> rows;
};

/// Rows (entity, text predicate, word-mode text extent) for every literal
/// attribute that differs between the variants; an attribute present on
/// only one side scores extent 1. Attributes equal on both sides produce
/// no row.
MetricTable changed_descriptions(const Model& a, const Model& b, const SchemaDescriptor& schema);

/// Structural and text extent of one entity, reported as two rows
/// ("structural_extent", "text_extent"). Structural extent is the Jaccard
/// distance over the entity's structural/hierarchy statements; text extent
/// is the mean word-mode extent over the schema's text predicates present
/// on either side. Throws if the entity is not a subject in A or B.
MetricTable entity_extent(const Model& a, const Model& b, const NodeId& entity,
                          const SchemaDescriptor& schema);

/// entity_extent over every subject of A ∪ B, in canonical entity order.
MetricTable all_entity_extents(const Model& a, const Model& b, const SchemaDescriptor& schema);

/// Per tree node: changed statements over union statements, counted over
/// the subjects in the node's subtree. The root row summarizes the whole
/// comparison instead of only the subjects reachable in the tree.
MetricTable aggregate_tree_extent(const TreeView& t, const Model& a, const Model& b);

/// Deterministic ratio formatting for text tables: fixed 6 decimals with
/// trailing zeros trimmed ("0.4", "0.333333", "0", "1").
std::string format_ratio(double v);

// Aligned-text renderings. One line per row, columns padded with two
// spaces between them, no header line, LF endings. An empty input renders
// as the empty string.
std::string render_table(const Model& m);
std::string render_table(const ComparisonModel& cm);
std::string render_table(const ThreeWayModel& t);
std::string render_table(const std::vector<EntityChange>& changes);
std::string render_table(const TreeView& t);
std::string render_table(const MetricTable& t);

/// Model ids attached to renderings of values that do not carry their own
/// (entity sets, trees, metric tables).
struct ModelRefs {
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::optional<std::string> ancestor;
};

// JSON renderings: a top-level object with "kind" (statements | entities |
// tree | metrics), the applicable model ids, and a "rows" payload (trees
// carry "root", "nodes" and "edges" instead). Two-space indentation,
// keys in alphabetical order, trailing newline.
std::string render_json(const Model& m);
std::string render_json(const ComparisonModel& cm);
std::string render_json(const ThreeWayModel& t);
std::string render_json(const std::vector<EntityChange>& changes, const ModelRefs& refs);
std::string render_json(const TreeView& t, const ModelRefs& refs);
std::string render_json(const MetricTable& t, const ModelRefs& refs);

}  // namespace procdiff
