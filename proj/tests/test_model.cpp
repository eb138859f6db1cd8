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

#include <doctest.h>

#include "support/testutil.hpp"

using namespace procdiff;
using testutil::st;
using testutil::stl;

TEST_CASE("node ids validate their iri") {
  CHECK_THROWS_AS(NodeId(""), std::invalid_argument);
  CHECK_THROWS_AS(NodeId("has space"), std::invalid_argument);
  CHECK_THROWS_AS(NodeId("a<b"), std::invalid_argument);
  CHECK_THROWS_AS(NodeId("a>b"), std::invalid_argument);
  CHECK_THROWS_AS(NodeId("a\"b"), std::invalid_argument);
  CHECK_THROWS_AS(NodeId(std::string("a\tb")), std::invalid_argument);
  CHECK(NodeId("p:proj").iri() == "p:proj");
  CHECK(NodeId("http://example.org/x").iri() == "http://example.org/x");
}

TEST_CASE("node and literal terms with identical spelling differ") {
  Term node{NodeId("p:x")};
  Term literal{LiteralValue("p:x")};
  CHECK(node != literal);
  CHECK(node < literal);  // nodes order before literals
  CHECK(Term{LiteralValue("p:x")} == literal);
}

TEST_CASE("statement ordering is canonical") {
  Statement s1 = st("a:s", "a:p", "a:o");
  Statement s2 = stl("a:s", "a:p", "a:o");
  Statement s3 = st("a:s", "a:q", "a:a");
  CHECK(s1 < s2);  // node object before literal object
  CHECK(s1 < s3);  // predicate compared before object
  CHECK(s2 < s3);
}

TEST_CASE("insert is idempotent and grows by one") {
  Model empty("e");
  Statement s1 = st("p:x", "p:y", "p:z");
  Model one = insert(empty, s1);
  CHECK(one.size() == 1);
  CHECK(insert(one, s1).size() == 1);
  CHECK(one.contains(s1));

  // the original value is untouched
  CHECK(empty.size() == 0);
}

TEST_CASE("insert into the ancestor fixture") {
  Model anc = testutil::fix_anc();
  REQUIRE(anc.size() == 8);
  Model grown = insert(anc, st("p:proj", "p:hasActivity", "p:test"));
  CHECK(grown.size() == 9);
}

TEST_CASE("model ids must be non-empty") {
  CHECK_THROWS_AS(Model(""), std::invalid_argument);
}

TEST_CASE("set operations on the fixtures") {
  Model a = testutil::fix_a();
  Model b = testutil::fix_b();
  CHECK(set_op(a.statements(), b.statements(), SetOp::Intersection).size() == 7);
  CHECK(set_op(a.statements(), {}, SetOp::Union) == a.statements());
  CHECK(set_op(a.statements(), a.statements(), SetOp::Difference).empty());
}

TEST_CASE("set operations match naive membership oracles") {
  std::mt19937 rng(20260810);
  for (int round = 0; round < 200; ++round) {
    Model a = testutil::random_model(rng, "a", 60);
    Model b = testutil::random_model(rng, "b", 60);
    auto va = testutil::to_vec(a.statements());
    auto vb = testutil::to_vec(b.statements());

    CHECK(testutil::same_statements(testutil::naive_union(va, vb),
                                    set_union(a.statements(), b.statements())));
    CHECK(testutil::same_statements(testutil::naive_intersection(va, vb),
                                    set_intersection(a.statements(), b.statements())));
    CHECK(testutil::same_statements(testutil::naive_difference(va, vb),
                                    set_difference(a.statements(), b.statements())));

    // |A ∪ B| = |A| + |B| - |A ∩ B|
    CHECK(set_union(a.statements(), b.statements()).size() ==
          a.size() + b.size() - set_intersection(a.statements(), b.statements()).size());
  }
}

TEST_CASE("statements_about returns exactly the subject's statements") {
  Model a = testutil::fix_a();
  CHECK(statements_about(a, NodeId("p:design")).size() == 4);
  CHECK(statements_about(testutil::fix_anc(), NodeId("p:review")).empty());
  CHECK(statements_about(testutil::fix_b(), NodeId("p:test")).size() == 2);
}

TEST_CASE("statements_about partitions the model by subject") {
  std::mt19937 rng(7);
  Model m = testutil::random_model(rng, "m", 120);
  StatementSet gathered;
  for (const NodeId& subject : subjects(m)) {
    StatementSet about = statements_about(m, subject);
    CHECK(!about.empty());
    for (const Statement& s : about) {
      CHECK(m.contains(s));
      CHECK(gathered.insert(s).second);  // disjoint per subject
    }
  }
  CHECK(gathered == m.statements());
}

TEST_CASE("subjects of the fixtures") {
  std::set<NodeId> anc = subjects(testutil::fix_anc());
  CHECK(anc == std::set<NodeId>{NodeId("p:proj"), NodeId("p:design"), NodeId("p:code")});
  CHECK(subjects(Model("empty")).empty());
  std::set<NodeId> b = subjects(testutil::fix_b());
  CHECK(b == std::set<NodeId>{NodeId("p:proj"), NodeId("p:design"), NodeId("p:code"),
                              NodeId("p:test")});
}

TEST_CASE("schema descriptor kinds and lookups") {
  SchemaDescriptor schema;
  schema.declare(NodeId("p:description"), PredicateKind::text);
  schema.declare(NodeId("p:hasActivity"), PredicateKind::hierarchy);
  CHECK(schema.kind_of(NodeId("p:description")) == PredicateKind::text);
  CHECK(schema.kind_of(NodeId("p:undeclared")) == PredicateKind::structural);
  CHECK(counts_as_structural(PredicateKind::hierarchy));
  CHECK(counts_as_structural(PredicateKind::structural));
  CHECK(!counts_as_structural(PredicateKind::text));
  CHECK(!counts_as_structural(PredicateKind::ignore));
  CHECK_THROWS_AS(schema.declare(NodeId("p:description"), PredicateKind::ignore),
                  std::invalid_argument);
}

TEST_CASE("name predicate resolution picks the first text-kind 'name'") {
  SchemaDescriptor schema;
  CHECK(!schema.name_predicate().has_value());
  schema.declare(NodeId("p:name"), PredicateKind::structural);
  CHECK(!schema.name_predicate().has_value());  // not text-kind

  SchemaDescriptor with_text;
  with_text.declare(NodeId("p:name"), PredicateKind::text);
  with_text.declare(NodeId("a:name"), PredicateKind::text);
  REQUIRE(with_text.name_predicate().has_value());
  CHECK(with_text.name_predicate()->iri() == "a:name");  // canonical order

  SchemaDescriptor slash;
  slash.declare(NodeId("http://x/name"), PredicateKind::text);
  REQUIRE(slash.name_predicate().has_value());
}
