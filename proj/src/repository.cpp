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

#include "procdiff/repository.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "procdiff/ntriples.hpp"

namespace procdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kModelsDir = "models";
constexpr const char* kSchemaName = "schema.schema";

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

// Replace-by-rename keeps the manifest intact if the process dies mid-write.
void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, contents);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw RepoError("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace

bool valid_variant_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

Repository Repository::init(const fs::path& root) {
  if (fs::exists(root / kManifestName)) {
    throw RepoError("repository already exists at " + root.string());
  }
  std::error_code ec;
  fs::create_directories(root / kModelsDir, ec);
  if (ec) throw RepoError("cannot create repository at " + root.string() + ": " + ec.message());
  Repository repo(root);
  repo.write_manifest();
  return repo;
}

Repository Repository::open(const fs::path& root) {
  fs::path manifest_path = root / kManifestName;
  if (!fs::exists(manifest_path)) {
    throw RepoError("no repository at " + root.string() + " (missing manifest.json)");
  }
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    throw RepoError("corrupt manifest at " + manifest_path.string() + ": " + e.what());
  }

  Repository repo(root);
  try {
    for (const json& entry : manifest.at("variants")) {
      VariantRecord rec;
      rec.id = entry.at("id").get<std::string>();
      rec.file = entry.at("file").get<std::string>();
      if (entry.contains("parent") && !entry["parent"].is_null()) {
        rec.parent = entry["parent"].get<std::string>();
      }
      repo.variants_.push_back(std::move(rec));
    }
    if (manifest.contains("schema") && !manifest["schema"].is_null()) {
      repo.schema_file_ = manifest["schema"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw RepoError("corrupt manifest at " + manifest_path.string() + ": " + e.what());
  }

  repo.validate_forest();

  if (repo.schema_file_) {
    repo.schema_ = parse_schema(read_file(root / *repo.schema_file_));
  }
  return repo;
}

void Repository::validate_forest() const {
  std::map<std::string, const VariantRecord*> by_id;
  for (const VariantRecord& rec : variants_) {
    if (!by_id.emplace(rec.id, &rec).second) {
      throw RepoError("manifest contains duplicate variant id '" + rec.id + "'");
    }
  }
  for (const VariantRecord& rec : variants_) {
    if (rec.parent && !by_id.count(*rec.parent)) {
      throw RepoError("variant '" + rec.id + "' has unknown parent '" + *rec.parent + "'");
    }
  }
  // Walk each parent chain; revisiting a node within one walk means a cycle.
  for (const VariantRecord& rec : variants_) {
    std::map<std::string, bool> seen;
    const VariantRecord* cur = &rec;
    while (cur->parent) {
      if (!seen.emplace(cur->id, true).second) {
        throw RepoError("manifest parent links contain a cycle involving '" + cur->id + "'");
      }
      cur = by_id.at(*cur->parent);
    }
  }
}

bool Repository::has_variant(const std::string& id) const {
  for (const VariantRecord& rec : variants_) {
    if (rec.id == id) return true;
  }
  return false;
}

const VariantRecord& Repository::record(const std::string& id) const {
  for (const VariantRecord& rec : variants_) {
    if (rec.id == id) return rec;
  }
  throw RepoError("unknown variant '" + id + "'");
}

void Repository::add_variant(const Model& model, const std::optional<std::string>& parent) {
  if (!valid_variant_id(model.id())) {
    throw RepoError("invalid variant id '" + model.id() +
                    "' (use letters, digits, '.', '_', '-')");
  }
  if (has_variant(model.id())) {
    throw RepoError("variant '" + model.id() + "' already exists");
  }
  if (parent && !has_variant(*parent)) {
    throw RepoError("unknown parent variant '" + *parent + "'");
  }

  std::string rel = std::string(kModelsDir) + "/" + model.id() + ".nt";
  write_file(root_ / rel, serialize_model(model));

  variants_.push_back(VariantRecord{model.id(), rel, parent});
  write_manifest();
}

Model Repository::load_variant(const std::string& id) const {
  const VariantRecord& rec = record(id);
  return parse_model(read_file(root_ / rec.file), id);
}

void Repository::install_schema(const fs::path& schema_file) {
  std::string contents = read_file(schema_file);
  parse_schema(contents);  // validate before committing anything
  write_file(root_ / kSchemaName, contents);
  schema_file_ = kSchemaName;
  schema_ = parse_schema(contents);
  write_manifest();
}

void Repository::write_manifest() const {
  json manifest;
  manifest["variants"] = json::array();
  for (const VariantRecord& rec : variants_) {
    json entry;
    entry["id"] = rec.id;
    entry["file"] = rec.file;
    entry["parent"] = rec.parent ? json(*rec.parent) : json(nullptr);
    manifest["variants"].push_back(std::move(entry));
  }
  manifest["schema"] = schema_file_ ? json(*schema_file_) : json(nullptr);
  write_file_atomic(root_ / kManifestName, manifest.dump(2) + "\n");
}

}  // namespace procdiff
