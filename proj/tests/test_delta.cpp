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

#include "procdiff/delta.hpp"

#include <random>

#include <doctest.h>

#include "procdiff/ntriples.hpp"
#include "support/testutil.hpp"

using namespace procdiff;

TEST_CASE("delta between ancestor and variant a") {
  Delta d = compute_delta(testutil::fix_anc(), testutil::fix_a());
  CHECK(d.from_id == "anc");
  CHECK(d.to_id == "a");
  CHECK(d.removed.size() == 1);
  CHECK(d.added.size() == 4);
  CHECK(set_intersection(d.removed, d.added).empty());
}

TEST_CASE("delta of a model with itself is empty") {
  Delta d = compute_delta(testutil::fix_a(), testutil::fix_a());
  CHECK(d.empty());
}

TEST_CASE("delta between the two variants") {
  Delta d = compute_delta(testutil::fix_a(), testutil::fix_b());
  CHECK(d.removed.size() == 4);
  CHECK(d.added.size() == 4);
}

TEST_CASE("apply reconstructs the target") {
  Model anc = testutil::fix_anc();
  Model a = testutil::fix_a();
  Model result = apply_delta(anc, compute_delta(anc, a));
  CHECK(result.statements() == a.statements());
  CHECK(result.id() == "a");
}

TEST_CASE("the identity delta leaves a model unchanged") {
  Model m = testutil::fix_b();
  Model result = apply_delta(m, Delta{"b", "b", {}, {}});
  CHECK(result.statements() == m.statements());
}

TEST_CASE("strict apply on the wrong base fails and names the missing statements") {
  Model anc = testutil::fix_anc();
  Delta d = compute_delta(anc, testutil::fix_a());
  // fixture b replaced the original description, so the removal is absent
  try {
    apply_delta(testutil::fix_b(), d);
    FAIL("expected DeltaApplyError");
  } catch (const DeltaApplyError& e) {
    CHECK(e.missing().size() == 1);
    CHECK(std::string(e.what()).find("produce the design document") != std::string::npos);
  }
}

TEST_CASE("lenient apply skips missing removals") {
  Model b = testutil::fix_b();
  Delta d = compute_delta(testutil::fix_anc(), testutil::fix_a());
  Model result = apply_delta(b, d, ApplyMode::lenient);
  CHECK(result.size() == b.size() + d.added.size());  // nothing removed, 4 added
  for (const Statement& s : d.added) CHECK(result.contains(s));
}

TEST_CASE("invert swaps direction and is an involution") {
  Delta d = compute_delta(testutil::fix_anc(), testutil::fix_a());
  Delta inv = invert_delta(d);
  CHECK(inv.from_id == "a");
  CHECK(inv.to_id == "anc");
  CHECK(inv.removed == d.added);
  CHECK(inv.added == d.removed);

  Model back = apply_delta(testutil::fix_a(), inv);
  CHECK(back.statements() == testutil::fix_anc().statements());

  Delta twice = invert_delta(invert_delta(d));
  CHECK(twice.from_id == d.from_id);
  CHECK(twice.to_id == d.to_id);
  CHECK(twice.removed == d.removed);
  CHECK(twice.added == d.added);

  Delta empty_inv = invert_delta(Delta{});
  CHECK(empty_inv.empty());
}

TEST_CASE("delta roundtrip and inversion laws hold on random pairs") {
  std::mt19937 rng(20260810);
  for (int round = 0; round < 300; ++round) {
    Model a = testutil::random_model(rng, "a", 200);
    Model b = testutil::mutate_model(rng, a, "b");
    Delta d = compute_delta(a, b);
    CHECK(apply_delta(a, d).statements() == b.statements());

    Delta inv = invert_delta(d);
    Delta reverse = compute_delta(b, a);
    CHECK(inv.removed == reverse.removed);
    CHECK(inv.added == reverse.added);
    CHECK(apply_delta(b, inv).statements() == a.statements());
  }
}

TEST_CASE("delta file format round-trips byte-exactly") {
  Delta d = compute_delta(testutil::fix_anc(), testutil::fix_a());
  std::string text = serialize_delta(d);
  CHECK(text ==
        "# procdiff-delta v1\n"
        "# from: anc\n"
        "# to: a\n"
        "- <p:design> <p:description> \"produce the design document\" .\n"
        "+ <p:design> <p:description> \"produce and review the design document\" .\n"
        "+ <p:design> <p:hasSubactivity> <p:review> .\n"
        "+ <p:review> <p:name> \"Design Review\" .\n"
        "+ <p:review> <p:type> <p:Activity> .\n");
  Delta back = parse_delta(text);
  CHECK(back.from_id == d.from_id);
  CHECK(back.to_id == d.to_id);
  CHECK(back.removed == d.removed);
  CHECK(back.added == d.added);
  CHECK(serialize_delta(back) == text);
}

TEST_CASE("delta parser rejects malformed input") {
  CHECK_THROWS_AS(parse_delta(""), ParseError);
  CHECK_THROWS_AS(parse_delta("# wrong header\n# from: a\n# to: b\n"), ParseError);
  CHECK_THROWS_AS(parse_delta("# procdiff-delta v1\n# from: a\n"), ParseError);
  CHECK_THROWS_AS(parse_delta("# procdiff-delta v1\n# from: a\n# to: b\n? <a> <b> <c> .\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_delta("# procdiff-delta v1\n# from: a\n# to: b\n- <a> <b> .\n"),
                  ParseError);
  // a statement on both sides violates the disjointness invariant
  CHECK_THROWS_AS(
      parse_delta("# procdiff-delta v1\n# from: a\n# to: b\n"
                  "- <a> <b> <c> .\n+ <a> <b> <c> .\n"),
      ParseError);
}
