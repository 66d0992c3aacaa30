#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "aerogen/geometry.hpp"

namespace aerogen {

// One detected/placed object: class, axis-aligned box, object-aligned box.
struct Annotation {
  int class_id = 0;
  AABB aabb;
  RotatedRect obb;
  bool is_partial = false;
  std::string provenance;
};

struct ImageRecord {
  std::string id;
  std::string file;
  int width = 0;
  int height = 0;
  double gsd = 0.0;
  std::string split;
  std::vector<Annotation> annotations;
  std::string seg_mask_file;          // empty -> key omitted
  int dropped = 0;                    // placements dropped; 0 -> key omitted
  std::string background_provenance;  // empty -> key omitted
};

// Machine-readable dataset index. `config` embeds the configuration that
// produced the dataset verbatim, so a manifest is sufficient to reproduce it.
struct DatasetManifest {
  int version = 1;
  std::string tool_version;
  nlohmann::ordered_json config;
  std::vector<ImageRecord> images;

  int64_t annotation_count() const;
};

nlohmann::ordered_json annotation_to_json(const Annotation& a);
Annotation annotation_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const nlohmann::ordered_json& j);

DatasetManifest load_manifest(const std::filesystem::path& path);

// Serializes with a fixed key order and writes via temp file + rename:
// identical manifests are byte-identical.
void save_manifest(const std::filesystem::path& path,
                   const DatasetManifest& m);

// Parses any JSON document, mapping failures to ConfigError/IoError.
nlohmann::ordered_json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path,
               const nlohmann::ordered_json& j);

}  // namespace aerogen
