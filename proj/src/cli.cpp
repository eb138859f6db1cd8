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

#include "procdiff/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "procdiff/compare.hpp"
#include "procdiff/delta.hpp"
#include "procdiff/ntriples.hpp"
#include "procdiff/query.hpp"
#include "procdiff/report.hpp"
#include "procdiff/repository.hpp"

namespace procdiff::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RepoError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RepoError("cannot write file: " + path.string());
  out << contents;
  out.close();
  if (!out) throw RepoError("write failed: " + path.string());
}

std::string strip_angle(std::string iri) {
  if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') {
    return iri.substr(1, iri.size() - 2);
  }
  return iri;
}

// `--tree root,predicate`; both IRIs, angle brackets optional.
std::pair<NodeId, NodeId> parse_tree_spec(const std::string& spec) {
  std::size_t comma = spec.find(',');
  if (comma == std::string::npos) {
    throw RepoError("--tree expects <root>,<predicate>");
  }
  return {NodeId(strip_angle(spec.substr(0, comma))),
          NodeId(strip_angle(spec.substr(comma + 1)))};
}

std::string category_summary(const ThreeWayModel& t) {
  static constexpr ChangeCategory order[] = {
      ChangeCategory::unchanged,  ChangeCategory::removed_in_a, ChangeCategory::removed_in_b,
      ChangeCategory::removed_in_both, ChangeCategory::added_in_a, ChangeCategory::added_in_b,
      ChangeCategory::added_in_both};
  std::string out;
  for (ChangeCategory c : order) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(c)) + " " + std::to_string(t.count(c));
  }
  return out;
}

std::string entity_list(const std::vector<Conflict>& conflicts) {
  if (conflicts.empty()) return "none";
  std::string out;
  for (const Conflict& c : conflicts) {
    if (!out.empty()) out += ", ";
    out += "<" + c.entity.iri() + ">";
  }
  return out;
}

std::string entity_list(const std::set<NodeId>& entities) {
  if (entities.empty()) return "none";
  std::string out;
  for (const NodeId& n : entities) {
    if (!out.empty()) out += ", ";
    out += "<" + n.iri() + ">";
  }
  return out;
}

struct DiffOptions {
  std::string a;
  std::string b;
  std::string ancestor;
  std::string format = "text";
  std::string tree;
};

int run_diff(const Repository& repo, const DiffOptions& opt, std::ostream& out,
             std::ostream& err) {
  Model a = repo.load_variant(opt.a);
  Model b = repo.load_variant(opt.b);
  const SchemaDescriptor* schema = repo.schema() ? &*repo.schema() : nullptr;

  std::optional<ThreeWayModel> three;
  if (!opt.ancestor.empty()) {
    three = classify3(repo.load_variant(opt.ancestor), a, b);
  }
  ComparisonModel cm = three ? project_two_way(*three) : compare(a, b);
  int status = cm.identical() ? kExitOk : kExitDifferences;

  std::optional<TreeView> tree;
  if (!opt.tree.empty()) {
    auto [root, predicate] = parse_tree_spec(opt.tree);
    tree = extract_tree(cm, root, predicate, schema);
  }

  if (opt.format == "dot") {
    if (!tree) {
      err << "error: --format dot requires --tree <root>,<predicate>\n";
      return kExitError;
    }
    out << render_dot(*tree);
    return status;
  }

  if (opt.format == "json") {
    if (tree) {
      ModelRefs refs{cm.a_id, cm.b_id,
                     three ? std::optional<std::string>(three->ancestor_id) : std::nullopt};
      out << render_json(*tree, refs);
    } else if (three) {
      out << render_json(*three);
    } else {
      out << render_json(cm);
    }
    return status;
  }

  if (opt.format != "text") {
    err << "error: unknown format '" << opt.format << "' (expected text, json or dot)\n";
    return kExitError;
  }

  if (three) {
    out << three->ancestor_id << " -> " << cm.a_id << ", " << cm.b_id << ": "
        << category_summary(*three) << "\n";
    ConflictReport report = conflicts(*three);
    out << "conflicts: " << entity_list(report.conflicts) << "\n";
    out << "convergent: " << entity_list(report.convergent) << "\n";
  } else if (cm.identical()) {
    out << "models identical\n";
    return status;
  } else {
    out << cm.a_id << " vs " << cm.b_id << ": both " << cm.count(Origin::both) << ", only_a "
        << cm.count(Origin::only_a) << ", only_b " << cm.count(Origin::only_b) << "\n";
  }

  if (tree) {
    out << render_table(*tree);
  } else if (three) {
    out << render_table(*three);
  } else {
    out << render_table(cm);
  }
  return status;
}

int run_metrics(const Repository& repo, const std::string& a_id, const std::string& b_id,
                const std::string& ancestor, const std::string& tree_spec, std::ostream& out) {
  Model a = repo.load_variant(a_id);
  Model b = repo.load_variant(b_id);
  SchemaDescriptor empty;
  const SchemaDescriptor& schema = repo.schema() ? *repo.schema() : empty;

  out << render_table(all_entity_extents(a, b, schema));

  if (!tree_spec.empty()) {
    auto [root, predicate] = parse_tree_spec(tree_spec);
    TreeView tree = extract_tree(compare(a, b), root, predicate,
                                 repo.schema() ? &*repo.schema() : nullptr);
    out << render_table(aggregate_tree_extent(tree, a, b));
  }

  if (!ancestor.empty()) {
    Model anc = repo.load_variant(ancestor);
    ThreeWayModel three = classify3(anc, a, b);
    out << three.ancestor_id << " -> " << a_id << ", " << b_id << ": "
        << category_summary(three) << "\n";
    out << "changeset similarity: "
        << format_ratio(changeset_similarity(compute_delta(anc, a), compute_delta(anc, b)))
        << "\n";
    ConflictReport report = conflicts(three);
    MetricTable sizes;
    for (const Conflict& c : report.conflicts) {
      StatementSet footprint = set_union(set_union(c.a_changes.removed, c.a_changes.added),
                                         set_union(c.b_changes.removed, c.b_changes.added));
      sizes.rows.push_back(
          {c.entity, "conflict_statements", static_cast<double>(footprint.size()), true});
    }
    out << "conflicts: " << entity_list(report.conflicts) << "\n";
    out << render_table(sizes);
  }
  return compare(a, b).identical() ? kExitOk : kExitDifferences;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"difference analysis for process models stored as triple graphs"};
  app.name("procdiff");
  app.require_subcommand(1);

  std::string repo_dir = ".procdiff";
  app.add_option("--repo", repo_dir, "repository directory (env PROCDIFF_REPO, default .procdiff)")
      ->envname("PROCDIFF_REPO");

  auto* cmd_init = app.add_subcommand("init", "create an empty repository");
  std::string schema_file;
  cmd_init->add_option("--schema", schema_file, "schema descriptor file to install");

  auto* cmd_import = app.add_subcommand("import", "add a model variant from a .nt file");
  std::string import_file, import_id, import_parent;
  cmd_import->add_option("file", import_file, "model file (.nt)")->required();
  cmd_import->add_option("--as", import_id, "variant id")->required();
  cmd_import->add_option("--parent", import_parent, "ancestor variant id");

  auto* cmd_diff = app.add_subcommand("diff", "compare two variants");
  DiffOptions diff_opt;
  cmd_diff->add_option("a", diff_opt.a, "first variant")->required();
  cmd_diff->add_option("b", diff_opt.b, "second variant")->required();
  cmd_diff->add_option("--ancestor", diff_opt.ancestor, "common ancestor (three-way mode)");
  cmd_diff->add_option("--format", diff_opt.format, "output format: text, json or dot");
  cmd_diff->add_option("--tree", diff_opt.tree, "render a hierarchy: <root>,<predicate>");

  auto* cmd_query = app.add_subcommand("query", "evaluate a pipeline expression");
  std::string pipeline_text;
  cmd_query->add_option("pipeline", pipeline_text, "pipeline expression")->required();

  auto* cmd_delta = app.add_subcommand("delta", "write the delta between two variants");
  std::string delta_a, delta_b, delta_out;
  cmd_delta->add_option("a", delta_a, "from variant")->required();
  cmd_delta->add_option("b", delta_b, "to variant")->required();
  cmd_delta->add_option("-o,--output", delta_out, "output file (.pdelta)")->required();

  auto* cmd_apply = app.add_subcommand("apply", "apply a delta file to a variant");
  std::string apply_base, apply_file, apply_id;
  bool apply_lenient = false;
  cmd_apply->add_option("base", apply_base, "base variant")->required();
  cmd_apply->add_option("file", apply_file, "delta file (.pdelta)")->required();
  cmd_apply->add_option("--as", apply_id, "id for the resulting variant")->required();
  cmd_apply->add_flag("--lenient", apply_lenient,
                      "skip missing removals and already-present additions");

  auto* cmd_metrics = app.add_subcommand("metrics", "per-entity change extents");
  std::string metrics_a, metrics_b, metrics_ancestor, metrics_tree;
  cmd_metrics->add_option("a", metrics_a, "first variant")->required();
  cmd_metrics->add_option("b", metrics_b, "second variant")->required();
  cmd_metrics->add_option("--ancestor", metrics_ancestor, "common ancestor (adds conflicts)");
  cmd_metrics->add_option("--tree", metrics_tree,
                          "add subtree change ratios: <root>,<predicate>");

  auto* cmd_desc = app.add_subcommand("descriptions", "list changed text attributes");
  std::string desc_a, desc_b;
  cmd_desc->add_option("a", desc_a, "first variant")->required();
  cmd_desc->add_option("b", desc_b, "second variant")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  if (cmd_init->parsed()) {
    Repository repo = Repository::init(repo_dir);
    if (!schema_file.empty()) repo.install_schema(schema_file);
    out << "initialized empty repository at " << repo_dir << "\n";
    return kExitOk;
  }

  Repository repo = Repository::open(repo_dir);

  if (cmd_import->parsed()) {
    Model model = parse_model(read_file(import_file), import_id);
    repo.add_variant(model, import_parent.empty() ? std::nullopt
                                                  : std::optional<std::string>(import_parent));
    out << "imported '" << import_id << "' (" << model.size() << " statements)\n";
    return kExitOk;
  }

  if (cmd_diff->parsed()) return run_diff(repo, diff_opt, out, err);

  if (cmd_query->parsed()) {
    Pipeline pipeline = parse_pipeline(pipeline_text);
    PipelineValue value = eval(pipeline, repo);
    // pipelines that stop short of a rendering stage fall back to table()
    out << render_value_table(value);
    return kExitOk;
  }

  if (cmd_delta->parsed()) {
    Delta d = compute_delta(repo.load_variant(delta_a), repo.load_variant(delta_b));
    write_file(delta_out, serialize_delta(d));
    out << "delta " << delta_a << " -> " << delta_b << ": " << d.removed.size() << " removed, "
        << d.added.size() << " added\n";
    return d.empty() ? kExitOk : kExitDifferences;
  }

  if (cmd_apply->parsed()) {
    Model base = repo.load_variant(apply_base);
    Delta d = parse_delta(read_file(apply_file));
    if (d.from_id != apply_base) {
      err << "warning: delta was computed from '" << d.from_id << "', applying to '"
          << apply_base << "'\n";
    }
    Model result = apply_delta(base, d, apply_lenient ? ApplyMode::lenient : ApplyMode::strict);
    repo.add_variant(Model(apply_id, result.statements()), apply_base);
    out << "created variant '" << apply_id << "' (" << result.size() << " statements)\n";
    return kExitOk;
  }

  if (cmd_metrics->parsed()) {
    return run_metrics(repo, metrics_a, metrics_b, metrics_ancestor, metrics_tree, out);
  }

  if (cmd_desc->parsed()) {
    Model a = repo.load_variant(desc_a);
    Model b = repo.load_variant(desc_b);
    if (!repo.schema()) {
      err << "warning: no schema installed; no text predicates declared\n";
    }
    SchemaDescriptor empty;
    MetricTable table = changed_descriptions(a, b, repo.schema() ? *repo.schema() : empty);
    out << render_table(table);
    return table.rows.empty() ? kExitOk : kExitDifferences;
  }

  err << "error: no command\n";
  return kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    for (const ParseDiagnostic& d : e.diagnostics()) {
      err << "error: line " << d.line << ": " << d.message << "\n";
    }
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace procdiff::cli
