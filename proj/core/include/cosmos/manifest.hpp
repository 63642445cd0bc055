#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cosmos {

struct CaseEntry {
  std::string id;
  std::string volume;                // path to the image .nii
  std::optional<std::string> label;  // path to the label .nii, when annotated
};

// Index of a dataset split into annotated-source / unlabeled-target /
// validation cases. Persisted as JSON with keys "source", "target",
// "validation".
struct DatasetManifest {
  std::vector<CaseEntry> source;      // (volume, label) pairs
  std::vector<CaseEntry> target;      // volumes only
  std::vector<CaseEntry> validation;  // (volume, optional label)

  std::size_t n_source() const { return source.size(); }
  std::size_t n_target() const { return target.size(); }
};

// Checks the manifest invariants: ids unique across all splits, source cases
// carry labels, and every referenced file exists.
void validate(const DatasetManifest& m);

void save_manifest(const DatasetManifest& m, const std::string& path);
// Loads and validates.
DatasetManifest load_manifest(const std::string& path);

}  // namespace cosmos
