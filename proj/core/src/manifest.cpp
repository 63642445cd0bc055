#include "cosmos/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "cosmos/error.hpp"
#include "cosmos/hash.hpp"

namespace cosmos {

namespace {

using nlohmann::ordered_json;

ordered_json entry_to_json(const CaseEntry& e) {
  ordered_json j;
  j["id"] = e.id;
  j["volume"] = e.volume;
  if (e.label) j["label"] = *e.label;
  return j;
}

CaseEntry entry_from_json(const nlohmann::json& j, const std::string& split) {
  if (!j.contains("id") || !j.contains("volume"))
    throw IoError("manifest: entry in split '" + split + "' is missing 'id' or 'volume'");
  CaseEntry e;
  e.id = j.at("id").get<std::string>();
  e.volume = j.at("volume").get<std::string>();
  if (j.contains("label")) e.label = j.at("label").get<std::string>();
  return e;
}

void check_files(const std::vector<CaseEntry>& cases, const std::string& split) {
  for (const auto& c : cases) {
    if (!std::filesystem::exists(c.volume))
      throw IoError("manifest: " + split + " case '" + c.id + "': volume file '" + c.volume +
                    "' does not exist");
    if (c.label && !std::filesystem::exists(*c.label))
      throw IoError("manifest: " + split + " case '" + c.id + "': label file '" + *c.label +
                    "' does not exist");
  }
}

}  // namespace

void validate(const DatasetManifest& m) {
  std::set<std::string> ids;
  auto add = [&](const std::vector<CaseEntry>& cases, const char* split) {
    for (const auto& c : cases) {
      if (!ids.insert(c.id).second)
        throw Error("manifest: case id '" + c.id + "' appears in more than one split (" + split + ")");
    }
  };
  add(m.source, "source");
  add(m.target, "target");
  add(m.validation, "validation");
  for (const auto& c : m.source)
    if (!c.label) throw Error("manifest: source case '" + c.id + "' has no label");
  check_files(m.source, "source");
  check_files(m.target, "target");
  check_files(m.validation, "validation");
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  ordered_json j;
  for (const char* split : {"source", "target", "validation"}) {
    const auto& cases = split == std::string("source") ? m.source
                       : split == std::string("target") ? m.target
                                                        : m.validation;
    ordered_json arr = ordered_json::array();
    for (const auto& c : cases) arr.push_back(entry_to_json(c));
    j[split] = std::move(arr);
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("manifest: cannot open '" + path + "' for writing");
  f << j.dump(2) << "\n";
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("manifest: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest: '" + path + "': " + e.what());
  }
  DatasetManifest m;
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? p : (base / fp).string();
  };
  for (const char* split : {"source", "target", "validation"}) {
    if (!j.contains(split)) continue;
    auto& dst = split == std::string("source") ? m.source
               : split == std::string("target") ? m.target
                                                : m.validation;
    for (const auto& e : j.at(split)) {
      CaseEntry c = entry_from_json(e, split);
      c.volume = resolve(c.volume);
      if (c.label) c.label = resolve(*c.label);
      dst.push_back(std::move(c));
    }
  }
  validate(m);
  return m;
}

}  // namespace cosmos
