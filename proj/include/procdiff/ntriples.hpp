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
#include <vector>

#include "procdiff/model.hpp"

namespace procdiff {

enum class Severity { error, warning };

struct ParseDiagnostic {
  std::size_t line = 0;  // 1-based physical line in the input
  std::string message;
  Severity severity = Severity::error;
};

/// Raised when a model, schema or delta file cannot be parsed. Carries one
/// diagnostic per offending line; what() formats the first of them.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> diagnostics);

  const std::vector<ParseDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

// Model interchange format, a strict line-oriented subset of N-Triples:
//
//   <iri> <iri> <iri> .
//   <iri> <iri> "literal" .
//
// IRIs contain no whitespace, control characters, '<', '>' or '"'.
// Literals support exactly the escapes \" \\ \n \t \r. A '#' as the first
// non-blank character starts a comment line; blank lines are ignored.
// Blank nodes (`_:`) are rejected. Accepts LF or CRLF input.

/// Parses `source` into a model named `id`. Duplicate statement lines
/// collapse silently; any syntax error aborts the whole parse and raises
/// ParseError with one diagnostic per bad line.
Model parse_model(std::string_view source, std::string_view id);

/// Canonical text form: one statement per line in canonical statement
/// order, LF line endings. Byte-identical output for equal statement sets.
std::string serialize_model(const Model& m);

/// One statement in interchange form, without the trailing newline:
/// `<s> <p> <o> .` or `<s> <p> "text" .`
std::string serialize_statement(const Statement& s);

/// Parses a single statement line (used by the delta codec). `line_no`
/// seeds the diagnostic position.
Statement parse_statement_line(std::string_view line, std::size_t line_no);

// Schema descriptor format, one declaration per line:
//
//   predicate <iri> kind=structural|text|hierarchy|ignore
//
// '#' comments and blank lines allowed. Undeclared predicates default to
// `structural`; declaring a predicate twice is an error.

SchemaDescriptor parse_schema(std::string_view source);

/// Applies the literal escape set (\" \\ \n \t \r) to raw text.
std::string escape_literal(std::string_view text);

}  // namespace procdiff
