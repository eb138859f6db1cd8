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

#include "procdiff/ntriples.hpp"

#include <optional>
#include <utility>

namespace procdiff {

namespace {

std::string format_diagnostic(const ParseDiagnostic& d) {
  return "line " + std::to_string(d.line) + ": " + d.message;
}

bool is_ws(char c) { return c == ' ' || c == '\t'; }

// Scanning errors throw LineError; the per-file drivers convert them into
// ParseDiagnostics carrying the 1-based physical line number.
struct LineError {
  std::string message;
};

class LineScanner {
 public:
  explicit LineScanner(std::string_view line) : line_(line) {}

  void skip_ws() {
    while (pos_ < line_.size() && is_ws(line_[pos_])) ++pos_;
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }

  void require_ws() {
    if (at_end() || !is_ws(line_[pos_])) {
      throw LineError{"expected whitespace between terms"};
    }
    skip_ws();
  }

  void check_blank_node() const {
    if (pos_ + 1 < line_.size() && line_[pos_] == '_' && line_[pos_ + 1] == ':') {
      throw LineError{"blank nodes are not supported; use stable IRIs"};
    }
  }

  NodeId scan_iri(const char* position) {
    check_blank_node();
    if (at_end() || peek() != '<') {
      if (!at_end() && peek() == '"') {
        throw LineError{std::string("literal not allowed in ") + position + " position"};
      }
      throw LineError{std::string("expected IRI in ") + position + " position"};
    }
    ++pos_;
    std::string iri;
    while (true) {
      if (at_end()) throw LineError{"unterminated IRI (missing '>')"};
      unsigned char c = static_cast<unsigned char>(line_[pos_]);
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c <= 0x20 || c == '<' || c == '"') {
        throw LineError{"forbidden character in IRI"};
      }
      iri.push_back(static_cast<char>(c));
      ++pos_;
    }
    if (iri.empty()) throw LineError{"empty IRI"};
    return NodeId(std::move(iri));
  }

  LiteralValue scan_literal() {
    ++pos_;  // opening quote already seen by caller
    std::string text;
    while (true) {
      if (at_end()) throw LineError{"unterminated literal"};
      char c = line_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) throw LineError{"unterminated literal"};
        char e = line_[pos_++];
        switch (e) {
          case '"': text.push_back('"'); break;
          case '\\': text.push_back('\\'); break;
          case 'n': text.push_back('\n'); break;
          case 't': text.push_back('\t'); break;
          case 'r': text.push_back('\r'); break;
          default: throw LineError{std::string("bad escape '\\") + e + "' in literal"};
        }
      } else {
        text.push_back(c);
      }
    }
    return LiteralValue(std::move(text));
  }

  Term scan_object() {
    check_blank_node();
    if (at_end() || peek() == '.') throw LineError{"missing object"};
    if (peek() == '<') return scan_iri("object");
    if (peek() == '"') return scan_literal();
    throw LineError{"expected IRI or literal in object position"};
  }

  void expect_terminator() {
    skip_ws();
    if (at_end() || peek() != '.') throw LineError{"expected '.' statement terminator"};
    ++pos_;
    skip_ws();
    if (!at_end()) throw LineError{"unexpected content after statement terminator"};
  }

  // Maximal run of non-whitespace characters; empty at end of line.
  std::string scan_word() {
    std::string word;
    while (!at_end() && !is_ws(peek())) {
      word.push_back(peek());
      ++pos_;
    }
    return word;
  }

 private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

Statement scan_statement(std::string_view line) {
  LineScanner sc(line);
  sc.skip_ws();
  NodeId subject = sc.scan_iri("subject");
  sc.require_ws();
  NodeId predicate = sc.scan_iri("predicate");
  sc.require_ws();
  Term object = sc.scan_object();
  sc.expect_terminator();
  return Statement{std::move(subject), std::move(predicate), std::move(object)};
}

// Splits on LF and strips a trailing CR per line. A trailing empty segment
// produced by a final newline is dropped.
std::vector<std::string_view> physical_lines(std::string_view source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t nl = source.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? source.substr(start)
                                : source.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool skippable(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_ws(line[i])) ++i;
  return i == line.size() || line[i] == '#';
}

std::optional<PredicateKind> kind_from_keyword(std::string_view word) {
  if (word == "structural") return PredicateKind::structural;
  if (word == "text") return PredicateKind::text;
  if (word == "hierarchy") return PredicateKind::hierarchy;
  if (word == "ignore") return PredicateKind::ignore;
  return std::nullopt;
}

// One declaration: `predicate <iri> kind=<keyword>`.
std::pair<NodeId, PredicateKind> scan_schema_line(std::string_view line) {
  LineScanner sc(line);
  sc.skip_ws();
  std::string head = sc.scan_word();
  if (head != "predicate") {
    throw LineError{"expected 'predicate' keyword, got '" + head + "'"};
  }
  sc.require_ws();
  NodeId predicate = sc.scan_iri("predicate");
  sc.require_ws();
  std::string kind_word = sc.scan_word();
  constexpr std::string_view prefix = "kind=";
  if (kind_word.rfind(prefix, 0) != 0) {
    throw LineError{"expected kind=structural|text|hierarchy|ignore"};
  }
  auto kind = kind_from_keyword(std::string_view(kind_word).substr(prefix.size()));
  if (!kind) {
    throw LineError{"unknown predicate kind '" + kind_word.substr(prefix.size()) + "'"};
  }
  sc.skip_ws();
  if (!sc.at_end()) throw LineError{"unexpected content after declaration"};
  return {std::move(predicate), *kind};
}

}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error(diagnostics.empty() ? std::string("parse error")
                                             : format_diagnostic(diagnostics.front())),
      diagnostics_(std::move(diagnostics)) {}

Model parse_model(std::string_view source, std::string_view id) {
  StatementSet statements;
  std::vector<ParseDiagnostic> errors;
  std::vector<std::string_view> lines = physical_lines(source);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    try {
      statements.insert(scan_statement(lines[i]));
    } catch (const LineError& e) {
      errors.push_back({i + 1, e.message, Severity::error});
    }
  }
  if (!errors.empty()) throw ParseError(std::move(errors));
  return Model(std::string(id), std::move(statements));
}

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string serialize_statement(const Statement& s) {
  std::string out = "<" + s.subject.iri() + "> <" + s.predicate.iri() + "> ";
  if (is_node(s.object)) {
    out += "<" + as_node(s.object).iri() + ">";
  } else {
    out += "\"" + escape_literal(as_literal(s.object).text()) + "\"";
  }
  out += " .";
  return out;
}

std::string serialize_model(const Model& m) {
  std::string out;
  for (const Statement& s : m.statements()) {  // std::set iterates canonically
    out += serialize_statement(s);
    out += '\n';
  }
  return out;
}

Statement parse_statement_line(std::string_view line, std::size_t line_no) {
  try {
    return scan_statement(line);
  } catch (const LineError& e) {
    throw ParseError({{line_no, e.message, Severity::error}});
  }
}

SchemaDescriptor parse_schema(std::string_view source) {
  SchemaDescriptor schema;
  std::vector<ParseDiagnostic> errors;
  std::vector<std::string_view> lines = physical_lines(source);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    try {
      auto [predicate, kind] = scan_schema_line(lines[i]);
      try {
        schema.declare(predicate, kind);
      } catch (const std::invalid_argument& dup) {
        throw LineError{dup.what()};
      }
    } catch (const LineError& e) {
      errors.push_back({i + 1, e.message, Severity::error});
    }
  }
  if (!errors.empty()) throw ParseError(std::move(errors));
  return schema;
}

}  // namespace procdiff
