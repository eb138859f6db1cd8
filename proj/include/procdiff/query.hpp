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
#include <variant>
#include <vector>

#include "procdiff/compare.hpp"
#include "procdiff/report.hpp"
#include "procdiff/repository.hpp"

namespace procdiff {

// Pipeline grammar (whitespace insignificant outside quotes):
//
//   pipeline := source ("|" stage)*
//   source   := name "(" id ("," id)* ")"
//   stage    := name "(" [arg ("," arg)*] ")"
//   arg      := key "=" value
//   value    := "text" | <iri> | number | keyword
//
// Sources: model(id), compare(idA, idB), compare3(idAnc, idA, idB).
//
// Stage catalog (input -> output):
//   filter(status=only_a|only_b|both)        two-way   -> two-way
//   filter(category=<three-way category>)    three-way -> three-way
//   filter(predicate=<iri> | subject=<iri>
//          | kind=structural|text)           statements -> statements
//   entities()                               two-way   -> entity set
//   conflicts()                              three-way -> entity set
//   tree(root=<iri>, predicate=<iri>)        statements -> tree
//   neighborhood(node=<iri>, depth=N)        statements -> statements
//   textdiff(predicate=<iri>)                two-way   -> metrics
//   extent()                                 two-way   -> metrics
//   table() / json()                         any       -> rendering
//   dot()                                    tree      -> rendering

/// Syntax problem, unknown stage, or bad stage argument; carries the
/// character offset into the pipeline text.
class QueryParseError : public std::runtime_error {
 public:
  QueryParseError(const std::string& message, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Stage input/output chain violation, detected before any data is read.
class QueryTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runtime failure while evaluating; stage index 0 is the source, 1 the
/// first pipe stage.
class QueryEvalError : public std::runtime_error {
 public:
  QueryEvalError(const std::string& message, std::size_t stage_index);

  std::size_t stage_index() const noexcept { return stage_index_; }

 private:
  std::size_t stage_index_;
};

struct ArgValue {
  enum class Kind { text, iri, number, keyword };

  Kind kind = Kind::keyword;
  std::string text;     // payload for text / iri / keyword
  double number = 0.0;  // payload for number

  friend bool operator==(const ArgValue&, const ArgValue&) = default;
};

struct StageArg {
  std::string key;
  ArgValue value;

  friend bool operator==(const StageArg&, const StageArg&) = default;
};

struct Stage {
  std::string name;
  std::vector<StageArg> args;

  friend bool operator==(const Stage&, const Stage&) = default;
};

struct SourceSpec {
  enum class Kind { model, compare2, compare3 };

  Kind kind = Kind::model;
  std::vector<std::string> ids;

  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct Pipeline {
  SourceSpec source;
  std::vector<Stage> stages;

  friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

/// Parses and validates stage names and argument keys/types against the
/// catalog. parse_pipeline(print_pipeline(p)) == p for every valid p.
Pipeline parse_pipeline(std::string_view text);

/// Canonical formatter: `compare(a, b) | filter(status=only_a) | table()`.
std::string print_pipeline(const Pipeline& p);

enum class ValueType {
  statements_plain,
  statements_two_way,
  statements_three_way,
  entity_set,
  tree_view,
  metric_table,
  rendering,
};

const char* to_string(ValueType t) noexcept;

/// Verifies the stage chain and returns the pipeline's final value type.
ValueType typecheck(const Pipeline& p);

struct Rendering {
  std::string text;
};

using PipelineValue = std::variant<Model, ComparisonModel, ThreeWayModel,
                                   std::vector<EntityChange>, TreeView, MetricTable, Rendering>;

/// Evaluates the pipeline against a repository snapshot. Deterministic:
/// repeated evaluation yields identical values.
PipelineValue eval(const Pipeline& p, const Repository& repo);

/// The table() rendering of any non-rendering value; used by callers that
/// receive a bare value from eval.
std::string render_value_table(const PipelineValue& v);

}  // namespace procdiff
