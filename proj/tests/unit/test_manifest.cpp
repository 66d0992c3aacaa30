#include <doctest.h>

#include <fstream>

#include "aerogen/errors.hpp"
#include "aerogen/manifest.hpp"
#include "fixtures.hpp"

using namespace aerogen;

TEST_SUITE("manifest") {

TEST_CASE("manifest json round trip") {
  DatasetManifest m;
  m.tool_version = "0.0.1";
  m.config = {{"seed", 7}};
  ImageRecord rec;
  rec.id = "img_000000";
  rec.file = "img_000000.png";
  rec.width = 600;
  rec.height = 600;
  rec.gsd = 0.1;
  rec.split = "train";
  Annotation ann;
  ann.class_id = 0;
  ann.obb = make_rotated_rect({30.25, 40.5}, 45.0, 20.0, 12.5);
  ann.aabb = aabb_of(ann.obb);
  ann.is_partial = true;
  ann.provenance = "blueprint:sedan";
  rec.annotations.push_back(ann);
  rec.seg_mask_file = "seg_000000.png";
  rec.dropped = 1;
  m.images.push_back(rec);

  const DatasetManifest back = manifest_from_json(manifest_to_json(m));
  REQUIRE(back.images.size() == 1);
  CHECK(back.images[0].id == rec.id);
  CHECK(back.images[0].split == "train");
  CHECK(back.images[0].dropped == 1);
  REQUIRE(back.images[0].annotations.size() == 1);
  const Annotation& got = back.images[0].annotations[0];
  CHECK(got.obb == ann.obb);
  CHECK(got.aabb == ann.aabb);
  CHECK(got.is_partial);
  CHECK(got.provenance == "blueprint:sedan");
  CHECK(manifest_to_json(back) == manifest_to_json(m));
}

TEST_CASE("save and load through the filesystem") {
  const auto dir = fixtures::scratch_dir("manifest_io");
  DatasetManifest m;
  m.tool_version = "x";
  save_manifest(dir / "m.json", m);
  const DatasetManifest back = load_manifest(dir / "m.json");
  CHECK(back.tool_version == "x");
  CHECK(back.images.empty());
  CHECK_THROWS_AS(load_manifest(dir / "nope.json"), IoError);

  {
    std::ofstream bad(dir / "bad.json");
    bad << "{ not json";
  }
  CHECK_THROWS_AS(load_manifest(dir / "bad.json"), ConfigError);

  {
    std::ofstream missing(dir / "missing.json");
    missing << R"({"version": 1})";
  }
  CHECK_THROWS_AS(load_manifest(dir / "missing.json"), DataError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("optional keys are omitted when empty") {
  DatasetManifest m;
  m.tool_version = "x";
  ImageRecord rec;
  rec.id = "a";
  rec.file = "a.png";
  rec.width = rec.height = 10;
  rec.gsd = 0.1;
  m.images.push_back(rec);
  const auto j = manifest_to_json(m);
  CHECK_FALSE(j["images"][0].contains("seg_mask_file"));
  CHECK_FALSE(j["images"][0].contains("dropped"));
  CHECK_FALSE(j["images"][0].contains("provenance"));
}

}  // TEST_SUITE
