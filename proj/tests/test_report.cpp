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

#include <doctest.h>

#include "procdiff/ntriples.hpp"
#include "support/testutil.hpp"

using namespace procdiff;
using testutil::st;
using testutil::stl;

namespace {

TreeView fixture_activity_tree() {
  ComparisonModel cm = compare(testutil::fix_a(), testutil::fix_b());
  SchemaDescriptor schema = testutil::fix_schema();
  return extract_tree(cm, NodeId("p:proj"), NodeId("p:hasActivity"), &schema);
}

}  // namespace

TEST_CASE("fixture activity tree has the expected shape") {
  TreeView t = fixture_activity_tree();
  CHECK(t.root == NodeId("p:proj"));
  REQUIRE(t.node_origins.size() == 4);
  CHECK(t.node_origins.at(NodeId("p:proj")) == Origin::both);
  CHECK(t.node_origins.at(NodeId("p:design")) == Origin::both);
  CHECK(t.node_origins.at(NodeId("p:code")) == Origin::both);
  CHECK(t.node_origins.at(NodeId("p:test")) == Origin::only_b);

  REQUIRE(t.edges.size() == 3);
  bool found_test_edge = false;
  for (const TreeEdge& e : t.edges) {
    if (e.child == NodeId("p:test")) {
      CHECK(e.parent == NodeId("p:proj"));
      CHECK(e.origin == Origin::only_b);
      found_test_edge = true;
    } else {
      CHECK(e.origin == Origin::both);
    }
  }
  CHECK(found_test_edge);
  CHECK(t.warnings.empty());
}

TEST_CASE("subactivity tree marks the review branch as only_a") {
  ComparisonModel cm = compare(testutil::fix_a(), testutil::fix_b());
  TreeView t = extract_tree(cm, NodeId("p:design"), NodeId("p:hasSubactivity"));
  CHECK(t.node_origins.at(NodeId("p:design")) == Origin::both);
  CHECK(t.node_origins.at(NodeId("p:review")) == Origin::only_a);
  REQUIRE(t.edges.size() == 1);
  CHECK(t.edges[0].origin == Origin::only_a);
}

TEST_CASE("extracting from a single model yields all-both origins") {
  TreeView t = extract_tree(testutil::fix_anc(), NodeId("p:proj"), NodeId("p:hasActivity"));
  for (const auto& [node, origin] : t.node_origins) {
    (void)node;
    CHECK(origin == Origin::both);
  }
  CHECK(t.node_origins.size() == 3);
}

TEST_CASE("an absent root is an error") {
  CHECK_THROWS_AS(
      extract_tree(testutil::fix_anc(), NodeId("p:nope"), NodeId("p:hasActivity")),
      ReportError);
}

TEST_CASE("a root with no outgoing hierarchy edges is a single-node tree") {
  TreeView t = extract_tree(testutil::fix_anc(), NodeId("p:code"), NodeId("p:hasActivity"));
  CHECK(t.edges.empty());
  CHECK(t.node_origins.size() == 1);
  std::string dot = render_dot(t);
  CHECK(dot == "digraph comparison {\n  \"p:code\" [label=\"p:code\"];\n}\n");
}

TEST_CASE("cycles terminate with a warning") {
  Model m("m", {st("x:a", "x:child", "x:b"), st("x:b", "x:child", "x:c"),
                st("x:c", "x:child", "x:a")});
  TreeView t = extract_tree(m, NodeId("x:a"), NodeId("x:child"));
  CHECK(t.node_origins.size() == 3);
  CHECK(t.edges.size() == 3);
  REQUIRE(t.warnings.size() == 1);
  CHECK(t.warnings[0].find("cycle") != std::string::npos);
}

TEST_CASE("multi-parent nodes appear once with all edges") {
  Model m("m", {st("x:root", "x:child", "x:l"), st("x:root", "x:child", "x:r"),
                st("x:l", "x:child", "x:shared"), st("x:r", "x:child", "x:shared")});
  TreeView t = extract_tree(m, NodeId("x:root"), NodeId("x:child"));
  CHECK(t.node_origins.size() == 4);
  CHECK(t.edges.size() == 4);
  CHECK(t.warnings.empty());
}

TEST_CASE("labels resolve through a text-kind name predicate") {
  SchemaDescriptor schema;
  schema.declare(NodeId("p:name"), PredicateKind::text);
  TreeView t = extract_tree(testutil::fix_anc(), NodeId("p:proj"), NodeId("p:hasActivity"),
                            &schema);
  CHECK(t.labels.at(NodeId("p:design")) == "Design");
  CHECK(t.labels.at(NodeId("p:code")) == "Coding");
  CHECK(t.labels.at(NodeId("p:proj")) == "p:proj");  // no name statement, IRI fallback
}

TEST_CASE("dot output follows the dashed/bold convention") {
  std::string dot = render_dot(fixture_activity_tree());
  CHECK(dot.find("\"p:proj\" -> \"p:test\" [style=bold];") != std::string::npos);
  CHECK(dot.find("\"p:test\" [label=\"p:test\", style=bold];") != std::string::npos);
  CHECK(dot.find("style=dashed") == std::string::npos);  // nothing A-only in this tree
  CHECK(dot.find("\"p:proj\" -> \"p:code\";") != std::string::npos);

  ComparisonModel cm = compare(testutil::fix_a(), testutil::fix_b());
  std::string sub = render_dot(extract_tree(cm, NodeId("p:design"), NodeId("p:hasSubactivity")));
  CHECK(sub.find("\"p:review\" [label=\"p:review\", style=dashed];") != std::string::npos);
  CHECK(sub.find("\"p:design\" -> \"p:review\" [style=dashed];") != std::string::npos);
  CHECK(sub.find("style=bold") == std::string::npos);
}

TEST_CASE("dot output is deterministic and well-formed") {
  TreeView t = fixture_activity_tree();
  std::string first = render_dot(t);
  std::string second = render_dot(t);
  CHECK(first == second);
  CHECK(first.rfind("digraph comparison {\n", 0) == 0);
  CHECK(first.substr(first.size() - 2) == "}\n");
  // every line inside the braces is indented two spaces and ends with ';'
  std::size_t lines = 0;
  std::size_t start = first.find('\n') + 1;
  while (start < first.size() - 2) {
    std::size_t nl = first.find('\n', start);
    std::string line = first.substr(start, nl - start);
    CHECK(line.rfind("  ", 0) == 0);
    CHECK(line.back() == ';');
    start = nl + 1;
    ++lines;
  }
  CHECK(lines == 7);  // 4 nodes + 3 edges
}

TEST_CASE("dot escapes quotes and backslashes in labels") {
  Model m("m", {stl("x:a", "p:name", "say \"hi\" \\ there"), st("x:a", "x:child", "x:b")});
  SchemaDescriptor schema;
  schema.declare(NodeId("p:name"), PredicateKind::text);
  std::string dot = render_dot(extract_tree(m, NodeId("x:a"), NodeId("x:child"), &schema));
  CHECK(dot.find("[label=\"say \\\"hi\\\" \\\\ there\"]") != std::string::npos);
}

TEST_CASE("changed descriptions on the fixtures") {
  SchemaDescriptor schema;
  schema.declare(NodeId("p:description"), PredicateKind::text);
  MetricTable table = changed_descriptions(testutil::fix_a(), testutil::fix_b(), schema);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].entity == NodeId("p:design"));
  CHECK(table.rows[0].metric == "<p:description>");
  CHECK(table.rows[0].value == 0.4);
}

TEST_CASE("changed descriptions of identical models are empty") {
  Model a = testutil::fix_a();
  MetricTable table = changed_descriptions(a, a, testutil::fix_schema());
  CHECK(table.rows.empty());
}

TEST_CASE("an attribute present on one side only scores extent 1") {
  SchemaDescriptor schema;
  schema.declare(NodeId("p:description"), PredicateKind::text);
  Model a("a", {stl("x:e", "p:description", "something")});
  Model b("b", {st("x:e", "p:type", "x:T")});
  MetricTable table = changed_descriptions(a, b, schema);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].value == 1.0);
}

TEST_CASE("changed descriptions are symmetric") {
  SchemaDescriptor schema = testutil::fix_schema();
  MetricTable ab = changed_descriptions(testutil::fix_a(), testutil::fix_b(), schema);
  MetricTable ba = changed_descriptions(testutil::fix_b(), testutil::fix_a(), schema);
  REQUIRE(ab.rows.size() == ba.rows.size());
  for (std::size_t i = 0; i < ab.rows.size(); ++i) {
    CHECK(ab.rows[i].entity == ba.rows[i].entity);
    CHECK(ab.rows[i].metric == ba.rows[i].metric);
    CHECK(ab.rows[i].value == ba.rows[i].value);
  }
}

TEST_CASE("entity extent of the design entity") {
  MetricTable table = entity_extent(testutil::fix_a(), testutil::fix_b(), NodeId("p:design"),
                                    testutil::fix_schema());
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].metric == "structural_extent");
  CHECK(table.rows[0].value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(table.rows[1].metric == "text_extent");
  CHECK(table.rows[1].value == 0.4);
}

TEST_CASE("entity extent boundaries") {
  SchemaDescriptor schema = testutil::fix_schema();
  Model a = testutil::fix_a();
  Model b = testutil::fix_b();

  MetricTable unchanged = entity_extent(a, b, NodeId("p:code"), schema);
  CHECK(unchanged.rows[0].value == 0.0);
  CHECK(unchanged.rows[1].value == 0.0);

  MetricTable only_b = entity_extent(a, b, NodeId("p:test"), schema);
  CHECK(only_b.rows[0].value == 1.0);

  CHECK_THROWS_AS(entity_extent(a, b, NodeId("p:ghost"), schema), ReportError);
}

TEST_CASE("aggregate tree extents over the fixture comparison") {
  TreeView t = fixture_activity_tree();
  MetricTable table =
      aggregate_tree_extent(t, testutil::fix_a(), testutil::fix_b());
  REQUIRE(table.rows.size() == 4);  // code, design, proj, test in canonical order

  auto value_of = [&table](const char* iri) {
    for (const MetricRow& r : table.rows) {
      if (r.entity == NodeId(iri)) return r.value;
    }
    FAIL("missing row for ", iri);
    return 0.0;
  };
  CHECK(value_of("p:proj") == doctest::Approx(8.0 / 15.0).epsilon(1e-12));  // whole model
  CHECK(value_of("p:code") == 0.0);
  CHECK(value_of("p:design") == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
  CHECK(value_of("p:test") == 1.0);
}

TEST_CASE("aggregate extents of identical models are all zero") {
  Model a = testutil::fix_a();
  TreeView t = extract_tree(compare(a, a), NodeId("p:proj"), NodeId("p:hasActivity"));
  for (const MetricRow& r : aggregate_tree_extent(t, a, a).rows) {
    CHECK(r.value == 0.0);
  }
}

TEST_CASE("only_a edges correspond to reachable hierarchy statements of A \\ B") {
  std::mt19937 rng(20260810);
  const NodeId pred("u:p0");
  for (int round = 0; round < 100; ++round) {
    Model a = testutil::random_model(rng, "a", 120);
    Model b = testutil::mutate_model(rng, a, "b");
    ComparisonModel cm = compare(a, b);
    std::set<NodeId> roots = subjects(a);
    if (roots.empty()) continue;
    TreeView t = extract_tree(cm, *roots.begin(), pred);

    auto edge_pairs = [&t](Origin o) {
      std::set<std::pair<std::string, std::string>> pairs;
      for (const TreeEdge& e : t.edges) {
        if (e.origin == o) pairs.insert({e.parent.iri(), e.child.iri()});
      }
      return pairs;
    };
    auto exclusive_pairs = [&t, &pred](const StatementSet& exclusive) {
      std::set<std::pair<std::string, std::string>> pairs;
      for (const Statement& s : exclusive) {
        if (s.predicate == pred && is_node(s.object) && t.node_origins.count(s.subject)) {
          pairs.insert({s.subject.iri(), as_node(s.object).iri()});
        }
      }
      return pairs;
    };
    CHECK(edge_pairs(Origin::only_a) ==
          exclusive_pairs(set_difference(a.statements(), b.statements())));
    CHECK(edge_pairs(Origin::only_b) ==
          exclusive_pairs(set_difference(b.statements(), a.statements())));
  }
}

TEST_CASE("subtree change ratios stay in [0,1] and are 0 only without changes") {
  std::mt19937 rng(31);
  const NodeId pred("u:p0");
  for (int round = 0; round < 50; ++round) {
    Model a = testutil::random_model(rng, "a", 100);
    Model b = testutil::mutate_model(rng, a, "b");
    std::set<NodeId> roots = subjects(a);
    if (roots.empty()) continue;
    TreeView t = extract_tree(compare(a, b), *roots.begin(), pred);
    for (const MetricRow& r : aggregate_tree_extent(t, a, b).rows) {
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
    }
  }
}

TEST_CASE("ratio formatting is minimal and deterministic") {
  CHECK(format_ratio(0.0) == "0");
  CHECK(format_ratio(1.0) == "1");
  CHECK(format_ratio(0.4) == "0.4");
  CHECK(format_ratio(1.0 / 3.0) == "0.333333");
  CHECK(format_ratio(0.25) == "0.25");
}

TEST_CASE("statement tables render one aligned row per statement") {
  std::string table = render_table(testutil::fix_anc());
  CHECK(std::count(table.begin(), table.end(), '\n') == 8);
  CHECK(table.find("<p:design>  <p:description>  \"produce the design document\"") !=
        std::string::npos);
  CHECK(render_table(Model("empty")) == "");
}

TEST_CASE("tree outline renders indented labels with origins") {
  std::string outline = render_table(fixture_activity_tree());
  CHECK(outline ==
        "<p:proj> [both]\n"
        "  <p:code> [both]\n"
        "  <p:design> [both]\n"
        "  <p:test> [only_b]\n");
}

TEST_CASE("json renderings carry ids, kinds and payloads") {
  Model anc = testutil::fix_anc();
  std::string model_json = render_json(anc);
  CHECK(model_json.find("\"kind\": \"statements\"") != std::string::npos);
  CHECK(model_json.find("\"a\": \"anc\"") != std::string::npos);

  ComparisonModel cm = compare(testutil::fix_a(), testutil::fix_b());
  std::string cm_json = render_json(cm);
  CHECK(cm_json.find("\"origin\": \"only_b\"") != std::string::npos);
  CHECK(cm_json.find("\"b\": \"b\"") != std::string::npos);

  ThreeWayModel t3 = classify3(anc, testutil::fix_a(), testutil::fix_b());
  std::string t3_json = render_json(t3);
  CHECK(t3_json.find("\"ancestor\": \"anc\"") != std::string::npos);
  CHECK(t3_json.find("\"category\": \"removed_in_both\"") != std::string::npos);

  ModelRefs refs{std::string("a"), std::string("b"), std::nullopt};
  std::string tree_json = render_json(fixture_activity_tree(), refs);
  CHECK(tree_json.find("\"kind\": \"tree\"") != std::string::npos);
  CHECK(tree_json.find("\"root\": \"p:proj\"") != std::string::npos);
  CHECK(tree_json.find("\"edges\"") != std::string::npos);

  // rendering twice gives identical bytes
  CHECK(render_json(cm) == render_json(cm));
}
