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

#include "procdiff/ntriples.hpp"

namespace procdiff {

namespace {

std::string describe_missing(const StatementSet& missing) {
  std::string msg = "delta does not apply: " + std::to_string(missing.size()) +
                    " removed statement(s) absent from the base model";
  for (const Statement& s : missing) {
    msg += "\n  " + serialize_statement(s);
  }
  return msg;
}

}  // namespace

DeltaApplyError::DeltaApplyError(StatementSet missing)
    : std::runtime_error(describe_missing(missing)), missing_(std::move(missing)) {}

Delta compute_delta(const Model& a, const Model& b) {
  return Delta{a.id(), b.id(), set_difference(a.statements(), b.statements()),
               set_difference(b.statements(), a.statements())};
}

Model apply_delta(const Model& m, const Delta& d, ApplyMode mode) {
  if (mode == ApplyMode::strict) {
    StatementSet missing = set_difference(d.removed, m.statements());
    if (!missing.empty()) throw DeltaApplyError(std::move(missing));
  }
  StatementSet out = set_difference(m.statements(), d.removed);
  out.insert(d.added.begin(), d.added.end());
  return Model(d.to_id.empty() ? m.id() : d.to_id, std::move(out));
}

Delta invert_delta(const Delta& d) {
  return Delta{d.to_id, d.from_id, d.added, d.removed};
}

std::string serialize_delta(const Delta& d) {
  std::string out = "# procdiff-delta v1\n";
  out += "# from: " + d.from_id + "\n";
  out += "# to: " + d.to_id + "\n";
  for (const Statement& s : d.removed) out += "- " + serialize_statement(s) + "\n";
  for (const Statement& s : d.added) out += "+ " + serialize_statement(s) + "\n";
  return out;
}

Delta parse_delta(std::string_view source) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= source.size()) {
      std::size_t nl = source.find('\n', start);
      std::string_view line = nl == std::string_view::npos
                                  ? source.substr(start)
                                  : source.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.emplace_back(line);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
  }

  auto fail = [](std::size_t line_no, std::string message) -> ParseError {
    return ParseError({{line_no, std::move(message), Severity::error}});
  };

  if (lines.empty() || lines[0] != "# procdiff-delta v1") {
    throw fail(1, "expected header '# procdiff-delta v1'");
  }
  auto header_value = [&](std::size_t idx, std::string_view key) -> std::string {
    std::string prefix = "# " + std::string(key) + ": ";
    if (idx >= lines.size() || lines[idx].rfind(prefix, 0) != 0) {
      throw fail(idx + 1, "expected header '# " + std::string(key) + ": <id>'");
    }
    return lines[idx].substr(prefix.size());
  };

  Delta d;
  d.from_id = header_value(1, "from");
  d.to_id = header_value(2, "to");

  for (std::size_t i = 3; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    if (line.rfind("- ", 0) == 0) {
      d.removed.insert(parse_statement_line(std::string_view(line).substr(2), i + 1));
    } else if (line.rfind("+ ", 0) == 0) {
      d.added.insert(parse_statement_line(std::string_view(line).substr(2), i + 1));
    } else {
      throw fail(i + 1, "expected '- ' or '+ ' statement line");
    }
  }

  if (!set_intersection(d.removed, d.added).empty()) {
    throw fail(1, "statement listed as both removed and added");
  }
  return d;
}

}  // namespace procdiff
