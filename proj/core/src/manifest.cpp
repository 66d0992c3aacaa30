#include "aerogen/manifest.hpp"

#include <fstream>

#include "aerogen/errors.hpp"

namespace aerogen {

using nlohmann::json;
using nlohmann::ordered_json;

int64_t DatasetManifest::annotation_count() const {
  int64_t n = 0;
  for (const ImageRecord& rec : images) {
    n += static_cast<int64_t>(rec.annotations.size());
  }
  return n;
}

ordered_json annotation_to_json(const Annotation& a) {
  ordered_json j;
  j["class_id"] = a.class_id;
  j["aabb"] = {a.aabb.x_min, a.aabb.y_min, a.aabb.x_max, a.aabb.y_max};
  j["obb"] = {{"cx", a.obb.center.x},
              {"cy", a.obb.center.y},
              {"w", a.obb.width},
              {"h", a.obb.height},
              {"angle_deg", a.obb.angle_deg}};
  j["is_partial"] = a.is_partial;
  j["provenance"] = a.provenance;
  return j;
}

Annotation annotation_from_json(const ordered_json& j) {
  Annotation a;
  a.class_id = j.at("class_id").get<int>();
  const auto& box = j.at("aabb");
  a.aabb = AABB{box.at(0).get<double>(), box.at(1).get<double>(),
                box.at(2).get<double>(), box.at(3).get<double>()};
  const auto& obb = j.at("obb");
  a.obb = RotatedRect{Point2{obb.at("cx").get<double>(),
                             obb.at("cy").get<double>()},
                      obb.at("w").get<double>(), obb.at("h").get<double>(),
                      obb.at("angle_deg").get<double>()};
  a.is_partial = j.value("is_partial", false);
  a.provenance = j.value("provenance", std::string{});
  return a;
}

ordered_json manifest_to_json(const DatasetManifest& m) {
  ordered_json j;
  j["version"] = m.version;
  j["tool_version"] = m.tool_version;
  j["config"] = m.config;
  j["images"] = ordered_json::array();
  for (const ImageRecord& rec : m.images) {
    ordered_json r;
    r["id"] = rec.id;
    r["file"] = rec.file;
    r["width"] = rec.width;
    r["height"] = rec.height;
    r["gsd"] = rec.gsd;
    r["split"] = rec.split;
    r["annotations"] = ordered_json::array();
    for (const Annotation& a : rec.annotations) {
      r["annotations"].push_back(annotation_to_json(a));
    }
    if (!rec.seg_mask_file.empty()) r["seg_mask_file"] = rec.seg_mask_file;
    if (rec.dropped > 0) r["dropped"] = rec.dropped;
    if (!rec.background_provenance.empty()) {
      r["provenance"] = rec.background_provenance;
    }
    j["images"].push_back(std::move(r));
  }
  return j;
}

DatasetManifest manifest_from_json(const ordered_json& j) {
  DatasetManifest m;
  try {
    m.version = j.at("version").get<int>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = j.value("config", ordered_json::object());
    for (const auto& r : j.at("images")) {
      ImageRecord rec;
      rec.id = r.at("id").get<std::string>();
      rec.file = r.at("file").get<std::string>();
      rec.width = r.at("width").get<int>();
      rec.height = r.at("height").get<int>();
      rec.gsd = r.at("gsd").get<double>();
      rec.split = r.value("split", std::string{});
      for (const auto& a : r.at("annotations")) {
        rec.annotations.push_back(annotation_from_json(a));
      }
      rec.seg_mask_file = r.value("seg_mask_file", std::string{});
      rec.dropped = r.value("dropped", 0);
      rec.background_provenance = r.value("provenance", std::string{});
      m.images.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
  return m;
}

ordered_json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    ordered_json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const ordered_json& j) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot create " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed to write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + ": " + ec.message());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(load_json(path));
}

void save_manifest(const std::filesystem::path& path,
                   const DatasetManifest& m) {
  save_json(path, manifest_to_json(m));
}

}  // namespace aerogen
