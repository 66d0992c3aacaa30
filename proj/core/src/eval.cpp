#include "aerogen/eval.hpp"

#include <algorithm>
#include <numeric>

#include "aerogen/errors.hpp"

namespace aerogen {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<int> match_detections(const std::vector<Detection>& dets,
                                  const std::vector<AABB>& gts,
                                  double iou_threshold) {
  std::vector<size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (dets[a].confidence != dets[b].confidence) {
      return dets[a].confidence > dets[b].confidence;
    }
    return a < b;
  });
  std::vector<int> matches(dets.size(), -1);
  std::vector<uint8_t> taken(gts.size(), 0);
  for (const size_t d : order) {
    int best = -1;
    double best_iou = 0.0;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double iou = iou_aabb(dets[d].aabb, gts[g]);
      if (iou >= iou_threshold && iou > best_iou) {
        best_iou = iou;
        best = static_cast<int>(g);
      }
    }
    if (best >= 0) {
      taken[best] = 1;
      matches[d] = best;
    }
  }
  return matches;
}

APResult average_precision(const std::vector<Detection>& dets,
                           const std::map<std::string, std::vector<AABB>>& gts,
                           double iou_threshold, double confidence_floor) {
  int64_t total_gt = 0;
  for (const auto& [id, boxes] : gts) {
    total_gt += static_cast<int64_t>(boxes.size());
  }
  if (total_gt == 0) {
    throw DataError("average_precision: no ground truths, AP is undefined");
  }

  // confidence floor, then canonical evaluation order
  std::vector<size_t> order;
  order.reserve(dets.size());
  for (size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].confidence >= confidence_floor) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (dets[a].confidence != dets[b].confidence) {
      return dets[a].confidence > dets[b].confidence;
    }
    if (dets[a].image_id != dets[b].image_id) {
      return dets[a].image_id < dets[b].image_id;
    }
    return a < b;
  });

  // greedy matching per image, in global evaluation order
  std::map<std::string, std::vector<uint8_t>> taken;
  for (const auto& [id, boxes] : gts) {
    taken[id].assign(boxes.size(), 0);
  }
  APResult result;
  result.curve.reserve(order.size());
  int64_t tp = 0, fp = 0;
  for (const size_t i : order) {
    const Detection& det = dets[i];
    bool matched = false;
    const auto it = gts.find(det.image_id);
    if (it != gts.end()) {
      const std::vector<AABB>& boxes = it->second;
      std::vector<uint8_t>& used = taken[det.image_id];
      int best = -1;
      double best_iou = 0.0;
      for (size_t g = 0; g < boxes.size(); ++g) {
        if (used[g]) continue;
        const double iou = iou_aabb(det.aabb, boxes[g]);
        if (iou >= iou_threshold && iou > best_iou) {
          best_iou = iou;
          best = static_cast<int>(g);
        }
      }
      if (best >= 0) {
        used[best] = 1;
        matched = true;
      }
    }
    matched ? ++tp : ++fp;
    result.curve.push_back(
        PrPoint{static_cast<double>(tp) / static_cast<double>(total_gt),
                static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }

  // interpolated precision over the 101-point recall grid
  double ap_sum = 0.0;
  for (int r = 0; r <= 100; ++r) {
    const double recall = r / 100.0;
    double best = 0.0;
    for (const PrPoint& p : result.curve) {
      if (p.recall >= recall - 1e-12) best = std::max(best, p.precision);
    }
    ap_sum += best;
  }
  result.ap = ap_sum / 101.0;
  result.tp = tp;
  result.fp = fp;
  result.fn = total_gt - tp;
  return result;
}

std::vector<Detection> load_detections(const std::filesystem::path& path) {
  const ordered_json j = load_json(path);
  std::vector<Detection> out;
  try {
    for (const auto& e : j) {
      Detection det;
      if (e.at("image_id").is_string()) {
        det.image_id = e["image_id"].get<std::string>();
      } else {
        det.image_id = std::to_string(e["image_id"].get<int64_t>());
      }
      const auto& box = e.at("bbox");
      det.aabb = AABB{box.at(0).get<double>(), box.at(1).get<double>(),
                      box.at(2).get<double>(), box.at(3).get<double>()};
      det.confidence = e.at("score").get<double>();
      det.class_id = e.value("class_id", 0);
      if (det.confidence < 0.0 || det.confidence > 1.0) {
        throw DataError("detection score outside [0, 1]");
      }
      if (det.aabb.width() <= 0.0 || det.aabb.height() <= 0.0) {
        throw DataError("detection box has non-positive area");
      }
      out.push_back(std::move(det));
    }
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return out;
}

std::map<std::string, std::vector<AABB>> ground_truth_boxes(
    const DatasetManifest& manifest) {
  std::map<std::string, std::vector<AABB>> out;
  for (const ImageRecord& rec : manifest.images) {
    auto& boxes = out[rec.id];
    for (const Annotation& ann : rec.annotations) {
      boxes.push_back(ann.aabb);
    }
  }
  return out;
}

ordered_json ap_result_to_json(const APResult& result) {
  ordered_json j;
  j["ap"] = result.ap;
  j["tp"] = result.tp;
  j["fp"] = result.fp;
  j["fn"] = result.fn;
  j["curve"] = ordered_json::array();
  for (const PrPoint& p : result.curve) {
    j["curve"].push_back({{"recall", p.recall}, {"precision", p.precision}});
  }
  return j;
}

}  // namespace aerogen
