#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aerogen/geometry.hpp"
#include "aerogen/manifest.hpp"

namespace aerogen {

struct Detection {
  std::string image_id;
  AABB aabb;
  double confidence = 0.0;
  int class_id = 0;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct APResult {
  double ap = 0.0;
  std::vector<PrPoint> curve;  // one point per counted detection
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
};

// Greedy matching for one image, in descending confidence (ties by insertion
// order). Each detection claims the unmatched ground truth with the highest
// IoU >= threshold (IoU ties to the lower gt index). Returns the claimed gt
// index per detection in the original order, -1 for false positives.
std::vector<int> match_detections(const std::vector<Detection>& dets,
                                  const std::vector<AABB>& gts,
                                  double iou_threshold);

// COCO-style AP at a single IoU threshold: detections below confidence_floor
// are discarded, the rest sorted by descending confidence (ties by image_id,
// then insertion order), matched greedily per image, and AP is the mean of
// interpolated precision over the 101 recall points {0.00, 0.01, ..., 1.00}.
// Throws DataError when there are no ground truths.
APResult average_precision(const std::vector<Detection>& dets,
                           const std::map<std::string, std::vector<AABB>>& gts,
                           double iou_threshold = 0.5,
                           double confidence_floor = 0.1);

// Detections file: JSON list of {image_id, bbox: [x_min, y_min, x_max,
// y_max], score}.
std::vector<Detection> load_detections(const std::filesystem::path& path);

// Ground-truth boxes per image id from a dataset manifest.
std::map<std::string, std::vector<AABB>> ground_truth_boxes(
    const DatasetManifest& manifest);

nlohmann::ordered_json ap_result_to_json(const APResult& result);

}  // namespace aerogen
