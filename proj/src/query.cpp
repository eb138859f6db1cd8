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

#include "procdiff/query.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <optional>

#include "procdiff/ntriples.hpp"
#include "procdiff/textdiff.hpp"

namespace procdiff {

QueryParseError::QueryParseError(const std::string& message, std::size_t offset)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

QueryEvalError::QueryEvalError(const std::string& message, std::size_t stage_index)
    : std::runtime_error("stage " + std::to_string(stage_index) + ": " + message),
      stage_index_(stage_index) {}

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_id_char(char c) {
  return is_ident_char(c) || c == '.' || c == '-';
}
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

const std::vector<std::string>& status_keywords() {
  static const std::vector<std::string> kw{"only_a", "only_b", "both"};
  return kw;
}

const std::vector<std::string>& category_keywords() {
  static const std::vector<std::string> kw{
      "unchanged",  "removed_in_a", "removed_in_b", "removed_in_both",
      "added_in_a", "added_in_b",   "added_in_both"};
  return kw;
}

const std::vector<std::string>& kind_keywords() {
  static const std::vector<std::string> kw{"structural", "text"};
  return kw;
}

class PipelineParser {
 public:
  explicit PipelineParser(std::string_view src) : src_(src) {}

  Pipeline parse() {
    Pipeline p;
    p.source = parse_source();
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() != '|') fail("expected '|' or end of pipeline");
      ++pos_;
      p.stages.push_back(parse_stage());
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw QueryParseError(message, pos_);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  void skip_ws() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "' " + what);
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    if (at_end() || !is_ident_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string model_id() {
    skip_ws();
    if (at_end() || !is_id_char(peek())) fail("expected model id");
    std::size_t start = pos_;
    while (!at_end() && is_id_char(peek())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  SourceSpec parse_source() {
    std::size_t name_pos;
    {
      skip_ws();
      name_pos = pos_;
    }
    std::string name = ident();
    SourceSpec source;
    std::size_t arity;
    if (name == "model") {
      source.kind = SourceSpec::Kind::model;
      arity = 1;
    } else if (name == "compare") {
      source.kind = SourceSpec::Kind::compare2;
      arity = 2;
    } else if (name == "compare3") {
      source.kind = SourceSpec::Kind::compare3;
      arity = 3;
    } else {
      pos_ = name_pos;
      fail("unknown source '" + name + "' (expected model, compare or compare3)");
    }
    expect('(', "after source name");
    source.ids.push_back(model_id());
    while (true) {
      skip_ws();
      if (!at_end() && peek() == ',') {
        ++pos_;
        source.ids.push_back(model_id());
        continue;
      }
      break;
    }
    expect(')', "after source ids");
    if (source.ids.size() != arity) {
      pos_ = name_pos;
      fail(name + "() takes exactly " + std::to_string(arity) + " id(s), got " +
           std::to_string(source.ids.size()));
    }
    return source;
  }

  ArgValue parse_value() {
    skip_ws();
    if (at_end()) fail("expected argument value");
    char c = peek();
    if (c == '"') return parse_text();
    if (c == '<') return parse_iri();
    if (c >= '0' && c <= '9') return parse_number();
    if (is_ident_start(c)) {
      ArgValue v;
      v.kind = ArgValue::Kind::keyword;
      v.text = ident();
      return v;
    }
    fail("expected argument value (quoted text, <iri>, number or keyword)");
  }

  ArgValue parse_text() {
    ++pos_;  // opening quote
    ArgValue v;
    v.kind = ArgValue::Kind::text;
    while (true) {
      if (at_end()) fail("unterminated quoted text");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated quoted text");
        char e = src_[pos_++];
        switch (e) {
          case '"': v.text.push_back('"'); break;
          case '\\': v.text.push_back('\\'); break;
          case 'n': v.text.push_back('\n'); break;
          case 't': v.text.push_back('\t'); break;
          case 'r': v.text.push_back('\r'); break;
          default: fail(std::string("bad escape '\\") + e + "' in quoted text");
        }
      } else {
        v.text.push_back(c);
      }
    }
    return v;
  }

  ArgValue parse_iri() {
    ++pos_;  // '<'
    std::string iri;
    while (true) {
      if (at_end()) fail("unterminated IRI (missing '>')");
      char c = src_[pos_++];
      if (c == '>') break;
      iri.push_back(c);
    }
    if (!valid_iri(iri)) fail("invalid IRI '" + iri + "'");
    ArgValue v;
    v.kind = ArgValue::Kind::iri;
    v.text = std::move(iri);
    return v;
  }

  ArgValue parse_number() {
    std::size_t start = pos_;
    while (!at_end() && peek() >= '0' && peek() <= '9') ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      if (at_end() || peek() < '0' || peek() > '9') fail("malformed number");
      while (!at_end() && peek() >= '0' && peek() <= '9') ++pos_;
    }
    ArgValue v;
    v.kind = ArgValue::Kind::number;
    v.number = std::stod(std::string(src_.substr(start, pos_ - start)));
    return v;
  }

  Stage parse_stage() {
    skip_ws();
    std::size_t name_pos = pos_;
    Stage stage;
    stage.name = ident();
    expect('(', "after stage name");
    skip_ws();
    if (!at_end() && peek() != ')') {
      while (true) {
        StageArg arg;
        arg.key = ident();
        expect('=', "after argument key");
        arg.value = parse_value();
        stage.args.push_back(std::move(arg));
        skip_ws();
        if (!at_end() && peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')', "after stage arguments");
    validate_stage(stage, name_pos);
    return stage;
  }

  // Catalog validation: stage names, argument keys, argument types and
  // keyword values are all fixed at parse time.
  void validate_stage(const Stage& stage, std::size_t name_pos) {
    auto fail_at = [&](const std::string& message) -> void {
      throw QueryParseError(message, name_pos);
    };
    auto require_keyword = [&](const StageArg& arg, const std::vector<std::string>& allowed) {
      if (arg.value.kind != ArgValue::Kind::keyword ||
          std::find(allowed.begin(), allowed.end(), arg.value.text) == allowed.end()) {
        std::string expected;
        for (const std::string& kw : allowed) {
          if (!expected.empty()) expected += "|";
          expected += kw;
        }
        fail_at(stage.name + ": argument '" + arg.key + "' must be one of " + expected);
      }
    };
    auto require_iri = [&](const StageArg& arg) {
      if (arg.value.kind != ArgValue::Kind::iri) {
        fail_at(stage.name + ": argument '" + arg.key + "' must be an <iri>");
      }
    };

    for (std::size_t i = 0; i < stage.args.size(); ++i) {
      for (std::size_t j = i + 1; j < stage.args.size(); ++j) {
        if (stage.args[i].key == stage.args[j].key) {
          fail_at(stage.name + ": duplicate argument '" + stage.args[i].key + "'");
        }
      }
    }

    if (stage.name == "filter") {
      if (stage.args.size() != 1) {
        fail_at("filter takes exactly one argument (status, category, predicate, subject or kind)");
      }
      const StageArg& arg = stage.args[0];
      if (arg.key == "status") {
        require_keyword(arg, status_keywords());
      } else if (arg.key == "category") {
        require_keyword(arg, category_keywords());
      } else if (arg.key == "predicate" || arg.key == "subject") {
        require_iri(arg);
      } else if (arg.key == "kind") {
        require_keyword(arg, kind_keywords());
      } else {
        fail_at("filter: unknown argument '" + arg.key + "'");
      }
      return;
    }
    if (stage.name == "entities" || stage.name == "conflicts" || stage.name == "extent" ||
        stage.name == "table" || stage.name == "json" || stage.name == "dot") {
      if (!stage.args.empty()) fail_at(stage.name + " takes no arguments");
      return;
    }
    if (stage.name == "tree") {
      if (stage.args.size() != 2) fail_at("tree requires root=<iri> and predicate=<iri>");
      for (const StageArg& arg : stage.args) {
        if (arg.key != "root" && arg.key != "predicate") {
          fail_at("tree: unknown argument '" + arg.key + "'");
        }
        require_iri(arg);
      }
      return;
    }
    if (stage.name == "neighborhood") {
      if (stage.args.size() != 2) fail_at("neighborhood requires node=<iri> and depth=N");
      for (const StageArg& arg : stage.args) {
        if (arg.key == "node") {
          require_iri(arg);
        } else if (arg.key == "depth") {
          if (arg.value.kind != ArgValue::Kind::number || arg.value.number < 0 ||
              arg.value.number != std::floor(arg.value.number)) {
            fail_at("neighborhood: depth must be a non-negative integer");
          }
        } else {
          fail_at("neighborhood: unknown argument '" + arg.key + "'");
        }
      }
      return;
    }
    if (stage.name == "textdiff") {
      if (stage.args.size() != 1 || stage.args[0].key != "predicate") {
        fail_at("textdiff requires predicate=<iri>");
      }
      require_iri(stage.args[0]);
      return;
    }
    fail_at("unknown stage '" + stage.name + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string print_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string print_value(const ArgValue& v) {
  switch (v.kind) {
    case ArgValue::Kind::text: return "\"" + escape_literal(v.text) + "\"";
    case ArgValue::Kind::iri: return "<" + v.text + ">";
    case ArgValue::Kind::number: return print_number(v.number);
    case ArgValue::Kind::keyword: return v.text;
  }
  return v.text;
}

const std::optional<StageArg> find_arg(const Stage& stage, std::string_view key) {
  for (const StageArg& arg : stage.args) {
    if (arg.key == key) return arg;
  }
  return std::nullopt;
}

bool is_statements(ValueType t) {
  return t == ValueType::statements_plain || t == ValueType::statements_two_way ||
         t == ValueType::statements_three_way;
}

}  // namespace

Pipeline parse_pipeline(std::string_view text) { return PipelineParser(text).parse(); }

std::string print_pipeline(const Pipeline& p) {
  std::string out;
  switch (p.source.kind) {
    case SourceSpec::Kind::model: out = "model"; break;
    case SourceSpec::Kind::compare2: out = "compare"; break;
    case SourceSpec::Kind::compare3: out = "compare3"; break;
  }
  out += "(";
  for (std::size_t i = 0; i < p.source.ids.size(); ++i) {
    if (i) out += ", ";
    out += p.source.ids[i];
  }
  out += ")";
  for (const Stage& stage : p.stages) {
    out += " | " + stage.name + "(";
    for (std::size_t i = 0; i < stage.args.size(); ++i) {
      if (i) out += ", ";
      out += stage.args[i].key + "=" + print_value(stage.args[i].value);
    }
    out += ")";
  }
  return out;
}

const char* to_string(ValueType t) noexcept {
  switch (t) {
    case ValueType::statements_plain: return "plain statement set";
    case ValueType::statements_two_way: return "two-way comparison";
    case ValueType::statements_three_way: return "three-way comparison";
    case ValueType::entity_set: return "entity change set";
    case ValueType::tree_view: return "tree view";
    case ValueType::metric_table: return "metric table";
    case ValueType::rendering: return "rendering";
  }
  return "rendering";
}

namespace {

ValueType source_type(const SourceSpec& source) {
  switch (source.kind) {
    case SourceSpec::Kind::model: return ValueType::statements_plain;
    case SourceSpec::Kind::compare2: return ValueType::statements_two_way;
    case SourceSpec::Kind::compare3: return ValueType::statements_three_way;
  }
  return ValueType::statements_plain;
}

ValueType stage_output(const Stage& stage, ValueType in, std::size_t index) {
  auto fail = [&](const std::string& need) -> void {
    throw QueryTypeError("stage " + std::to_string(index) + " (" + stage.name + "): requires " +
                         need + ", got " + to_string(in));
  };

  if (stage.name == "filter") {
    const StageArg& arg = stage.args[0];
    if (arg.key == "status") {
      if (in != ValueType::statements_two_way) fail("a two-way comparison (status decorations)");
      return in;
    }
    if (arg.key == "category") {
      if (in != ValueType::statements_three_way) {
        fail("a three-way comparison (category decorations)");
      }
      return in;
    }
    if (!is_statements(in)) fail("a statement set");
    return in;
  }
  if (stage.name == "entities") {
    if (in != ValueType::statements_two_way) fail("a two-way comparison");
    return ValueType::entity_set;
  }
  if (stage.name == "conflicts") {
    if (in != ValueType::statements_three_way) fail("a three-way comparison");
    return ValueType::entity_set;
  }
  if (stage.name == "tree") {
    if (!is_statements(in)) fail("a statement set");
    return ValueType::tree_view;
  }
  if (stage.name == "neighborhood") {
    if (!is_statements(in)) fail("a statement set");
    return in;
  }
  if (stage.name == "textdiff" || stage.name == "extent") {
    if (in != ValueType::statements_two_way) fail("a two-way comparison");
    return ValueType::metric_table;
  }
  if (stage.name == "table" || stage.name == "json") {
    if (in == ValueType::rendering) fail("a non-rendering value");
    return ValueType::rendering;
  }
  if (stage.name == "dot") {
    if (in != ValueType::tree_view) fail("a tree view");
    return ValueType::rendering;
  }
  throw QueryTypeError("stage " + std::to_string(index) + ": unknown stage '" + stage.name + "'");
}

}  // namespace

ValueType typecheck(const Pipeline& p) {
  ValueType t = source_type(p.source);
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    t = stage_output(p.stages[i], t, i + 1);
  }
  return t;
}

namespace {

struct EvalContext {
  const Repository& repo;
  const SchemaDescriptor* schema;
  ModelRefs refs;
};

NodeId arg_node(const Stage& stage, std::string_view key) {
  return NodeId(find_arg(stage, key)->value.text);
}

// Statement-level filtering shared by the three statement flavors.
template <typename Entries, typename Pred>
void erase_entries_if(Entries& entries, Pred pred) {
  for (auto it = entries.begin(); it != entries.end();) {
    if (pred(it->first)) {
      it = entries.erase(it);
    } else {
      ++it;
    }
  }
}

template <typename Pred>
PipelineValue filter_statements(PipelineValue value, Pred keep) {
  if (auto* m = std::get_if<Model>(&value)) {
    StatementSet kept;
    for (const Statement& s : m->statements()) {
      if (keep(s)) kept.insert(s);
    }
    return Model(m->id(), std::move(kept));
  }
  if (auto* cm = std::get_if<ComparisonModel>(&value)) {
    erase_entries_if(cm->entries, [&](const Statement& s) { return !keep(s); });
    return value;
  }
  auto& t = std::get<ThreeWayModel>(value);
  erase_entries_if(t.entries, [&](const Statement& s) { return !keep(s); });
  return value;
}

// Nodes within `depth` undirected hops of `start`, following node-valued
// statements of the set.
template <typename EntryRange>
std::set<NodeId> neighborhood_nodes(const EntryRange& statements, const NodeId& start,
                                    std::size_t depth) {
  std::map<NodeId, std::vector<NodeId>> adjacency;
  for (const Statement& s : statements) {
    if (!is_node(s.object)) continue;
    const NodeId& obj = as_node(s.object);
    adjacency[s.subject].push_back(obj);
    adjacency[obj].push_back(s.subject);
  }
  std::set<NodeId> visited{start};
  std::deque<std::pair<NodeId, std::size_t>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [node, dist] = queue.front();
    queue.pop_front();
    if (dist == depth) continue;
    auto it = adjacency.find(node);
    if (it == adjacency.end()) continue;
    for (const NodeId& next : it->second) {
      if (visited.insert(next).second) queue.push_back({next, dist + 1});
    }
  }
  return visited;
}

std::vector<Statement> all_statements(const PipelineValue& value) {
  std::vector<Statement> out;
  if (const auto* m = std::get_if<Model>(&value)) {
    out.assign(m->statements().begin(), m->statements().end());
  } else if (const auto* cm = std::get_if<ComparisonModel>(&value)) {
    for (const auto& [stmt, origin] : cm->entries) {
      (void)origin;
      out.push_back(stmt);
    }
  } else if (const auto* t = std::get_if<ThreeWayModel>(&value)) {
    for (const auto& [stmt, presence] : t->entries) {
      (void)presence;
      out.push_back(stmt);
    }
  }
  return out;
}

PipelineValue apply_filter(const Stage& stage, PipelineValue value, const EvalContext& ctx) {
  const StageArg& arg = stage.args[0];
  if (arg.key == "status") {
    auto& cm = std::get<ComparisonModel>(value);
    Origin wanted = arg.value.text == "only_a"   ? Origin::only_a
                    : arg.value.text == "only_b" ? Origin::only_b
                                                 : Origin::both;
    for (auto it = cm.entries.begin(); it != cm.entries.end();) {
      it = it->second == wanted ? std::next(it) : cm.entries.erase(it);
    }
    return value;
  }
  if (arg.key == "category") {
    auto& t = std::get<ThreeWayModel>(value);
    for (auto it = t.entries.begin(); it != t.entries.end();) {
      it = std::string(to_string(category_of(it->second))) == arg.value.text
               ? std::next(it)
               : t.entries.erase(it);
    }
    return value;
  }
  if (arg.key == "predicate") {
    NodeId pred(arg.value.text);
    return filter_statements(std::move(value),
                             [&](const Statement& s) { return s.predicate == pred; });
  }
  if (arg.key == "subject") {
    NodeId subj(arg.value.text);
    return filter_statements(std::move(value),
                             [&](const Statement& s) { return s.subject == subj; });
  }
  // kind: resolved through the repository schema; with no schema installed
  // every predicate defaults to structural.
  SchemaDescriptor empty;
  const SchemaDescriptor& schema = ctx.schema ? *ctx.schema : empty;
  bool want_text = arg.value.text == "text";
  return filter_statements(std::move(value), [&](const Statement& s) {
    PredicateKind k = schema.kind_of(s.predicate);
    return want_text ? k == PredicateKind::text : counts_as_structural(k);
  });
}

std::vector<EntityChange> conflict_entities(const ThreeWayModel& t) {
  ConflictReport report = conflicts(t);
  std::set<NodeId> ancestor_subjects;
  for (const auto& [stmt, presence] : t.entries) {
    if (presence.in_ancestor) ancestor_subjects.insert(stmt.subject);
  }
  std::vector<EntityChange> out;
  for (const Conflict& c : report.conflicts) {
    EntityChange ec{c.entity,
                    ancestor_subjects.count(c.entity) ? EntityStatus::modified
                                                      : EntityStatus::added,
                    {}};
    for (const StatementSet* set :
         {&c.a_changes.removed, &c.a_changes.added, &c.b_changes.removed, &c.b_changes.added}) {
      for (const Statement& s : *set) ec.changed_predicates.insert(s.predicate);
    }
    out.push_back(std::move(ec));
  }
  return out;
}

MetricTable structural_extents(const ComparisonModel& cm, const SchemaDescriptor& schema) {
  Model a(cm.a_id.empty() ? "a" : cm.a_id, cm.side_a());
  Model b(cm.b_id.empty() ? "b" : cm.b_id, cm.side_b());
  MetricTable all = all_entity_extents(a, b, schema);
  MetricTable out;
  for (MetricRow& row : all.rows) {
    if (row.metric == "structural_extent") out.rows.push_back(std::move(row));
  }
  return out;
}

MetricTable textdiff_rows(const ComparisonModel& cm, const NodeId& predicate) {
  Model a(cm.a_id.empty() ? "a" : cm.a_id, cm.side_a());
  Model b(cm.b_id.empty() ? "b" : cm.b_id, cm.side_b());
  SchemaDescriptor schema;
  schema.declare(predicate, PredicateKind::text);
  return changed_descriptions(a, b, schema);
}

PipelineValue apply_stage(const Stage& stage, PipelineValue value, const EvalContext& ctx,
                          std::size_t index) {
  if (stage.name == "filter") return apply_filter(stage, std::move(value), ctx);
  if (stage.name == "entities") {
    return entity_changes(std::get<ComparisonModel>(value));
  }
  if (stage.name == "conflicts") {
    return conflict_entities(std::get<ThreeWayModel>(value));
  }
  if (stage.name == "tree") {
    NodeId root = arg_node(stage, "root");
    NodeId predicate = arg_node(stage, "predicate");
    try {
      if (auto* m = std::get_if<Model>(&value)) {
        return extract_tree(*m, root, predicate, ctx.schema);
      }
      if (auto* t = std::get_if<ThreeWayModel>(&value)) {
        return extract_tree(project_two_way(*t), root, predicate, ctx.schema);
      }
      return extract_tree(std::get<ComparisonModel>(value), root, predicate, ctx.schema);
    } catch (const ReportError& e) {
      throw QueryEvalError(e.what(), index);
    }
  }
  if (stage.name == "neighborhood") {
    NodeId node = arg_node(stage, "node");
    auto depth = static_cast<std::size_t>(find_arg(stage, "depth")->value.number);
    std::set<NodeId> nodes = neighborhood_nodes(all_statements(value), node, depth);
    return filter_statements(std::move(value), [&](const Statement& s) {
      return nodes.count(s.subject) != 0 ||
             (is_node(s.object) && nodes.count(as_node(s.object)) != 0);
    });
  }
  if (stage.name == "textdiff") {
    return textdiff_rows(std::get<ComparisonModel>(value), arg_node(stage, "predicate"));
  }
  if (stage.name == "extent") {
    SchemaDescriptor empty;
    return structural_extents(std::get<ComparisonModel>(value),
                              ctx.schema ? *ctx.schema : empty);
  }
  if (stage.name == "table") {
    return Rendering{render_value_table(value)};
  }
  if (stage.name == "json") {
    if (auto* m = std::get_if<Model>(&value)) return Rendering{render_json(*m)};
    if (auto* cm = std::get_if<ComparisonModel>(&value)) return Rendering{render_json(*cm)};
    if (auto* t3 = std::get_if<ThreeWayModel>(&value)) return Rendering{render_json(*t3)};
    if (auto* ec = std::get_if<std::vector<EntityChange>>(&value)) {
      return Rendering{render_json(*ec, ctx.refs)};
    }
    if (auto* tv = std::get_if<TreeView>(&value)) return Rendering{render_json(*tv, ctx.refs)};
    return Rendering{render_json(std::get<MetricTable>(value), ctx.refs)};
  }
  if (stage.name == "dot") {
    return Rendering{render_dot(std::get<TreeView>(value))};
  }
  throw QueryEvalError("unknown stage '" + stage.name + "'", index);
}

}  // namespace

std::string render_value_table(const PipelineValue& v) {
  if (const auto* m = std::get_if<Model>(&v)) return render_table(*m);
  if (const auto* cm = std::get_if<ComparisonModel>(&v)) return render_table(*cm);
  if (const auto* t3 = std::get_if<ThreeWayModel>(&v)) return render_table(*t3);
  if (const auto* ec = std::get_if<std::vector<EntityChange>>(&v)) return render_table(*ec);
  if (const auto* tv = std::get_if<TreeView>(&v)) return render_table(*tv);
  if (const auto* mt = std::get_if<MetricTable>(&v)) return render_table(*mt);
  return std::get<Rendering>(v).text;
}

PipelineValue eval(const Pipeline& p, const Repository& repo) {
  typecheck(p);

  EvalContext ctx{repo, repo.schema() ? &*repo.schema() : nullptr, {}};

  auto load = [&repo](const std::string& id) -> Model {
    try {
      return repo.load_variant(id);
    } catch (const RepoError& e) {
      throw QueryEvalError(e.what(), 0);
    }
  };

  PipelineValue value = [&]() -> PipelineValue {
    const std::vector<std::string>& ids = p.source.ids;
    switch (p.source.kind) {
      case SourceSpec::Kind::model:
        ctx.refs.a = ids[0];
        return load(ids[0]);
      case SourceSpec::Kind::compare2: {
        ctx.refs.a = ids[0];
        ctx.refs.b = ids[1];
        Model a = load(ids[0]);
        Model b = load(ids[1]);
        return compare(a, b);
      }
      case SourceSpec::Kind::compare3: {
        ctx.refs.ancestor = ids[0];
        ctx.refs.a = ids[1];
        ctx.refs.b = ids[2];
        Model anc = load(ids[0]);
        Model a = load(ids[1]);
        Model b = load(ids[2]);
        return classify3(anc, a, b);
      }
    }
    throw QueryEvalError("unknown source", 0);
  }();

  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    value = apply_stage(p.stages[i], std::move(value), ctx, i + 1);
  }
  return value;
}

}  // namespace procdiff
