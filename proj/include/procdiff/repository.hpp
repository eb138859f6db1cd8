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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "procdiff/model.hpp"

namespace procdiff {

class RepoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VariantRecord {
  std::string id;
  std::string file;  // relative to the repository root
  std::optional<std::string> parent;
};

/// On-disk repository of model variants with ancestor links.
///
/// Layout: `<root>/manifest.json`, `<root>/models/<id>.nt`, optional
/// `<root>/schema.schema`. Variant files are canonical serializations and
/// immutable once written; the manifest is replaced atomically
/// (write-temp-then-rename), so a crashed writer never corrupts the store.
/// A handle is single-writer; concurrent readers are safe.
class Repository {
 public:
  /// Creates an empty repository at `root`. Fails if one is already there
  /// or the path is not writable.
  static Repository init(const std::filesystem::path& root);

  /// Opens an existing repository, validating that variant ids are unique,
  /// every parent link names an existing variant, and the parent graph is
  /// acyclic.
  static Repository open(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::vector<VariantRecord>& variants() const noexcept { return variants_; }
  bool has_variant(const std::string& id) const;
  const VariantRecord& record(const std::string& id) const;

  /// Serializes `model` canonically to models/<id>.nt and appends a
  /// manifest entry. The id must match [A-Za-z0-9._-]+ so it maps to a
  /// safe file name. Fails on duplicate id or unknown parent.
  void add_variant(const Model& model, const std::optional<std::string>& parent = std::nullopt);

  Model load_variant(const std::string& id) const;

  /// Copies a schema descriptor file into the repository as
  /// schema.schema and records it in the manifest.
  void install_schema(const std::filesystem::path& schema_file);

  const std::optional<SchemaDescriptor>& schema() const noexcept { return schema_; }

 private:
  explicit Repository(std::filesystem::path root) : root_(std::move(root)) {}

  void write_manifest() const;
  void validate_forest() const;

  std::filesystem::path root_;
  std::vector<VariantRecord> variants_;
  std::optional<std::string> schema_file_;
  std::optional<SchemaDescriptor> schema_;
};

/// True if `id` is non-empty and uses only [A-Za-z0-9._-].
bool valid_variant_id(const std::string& id);

}  // namespace procdiff
