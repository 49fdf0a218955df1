#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnmine/geometry.hpp"
#include "fnmine/temporal.hpp"

namespace fnmine {

struct GroundTruthObject {
  BBox box;
  Category category = Category::Car;
  int track_id = -1;
  int frame = 0;
  // DontCare regions and objects under the minimum height. Never counted as
  // positives or negatives.
  bool is_ignore = false;
  // Present when the line came from a KITTI-style results file.
  std::optional<double> score;

  friend bool operator==(const GroundTruthObject&,
                         const GroundTruthObject&) = default;
};

using GroundTruthByFrame = std::map<int, std::vector<GroundTruthObject>>;

struct PoseRecord {
  int frame = 0;
  double x_m = 0.0;
  double y_m = 0.0;

  friend bool operator==(const PoseRecord&, const PoseRecord&) = default;
};

// Everything the pipeline knows about one sequence. Disparity maps are kept
// on disk (or rendered on demand by the synthetic generator) and are not
// part of this struct.
struct SequenceDataset {
  std::string sequence_id;
  int image_width = 0;
  int image_height = 0;
  std::vector<int> frames;
  DetectionsByFrame left_detections;
  DetectionsByFrame right_detections;
  TrackletsByFrame tracklets;
  GroundTruthByFrame ground_truth;
  std::vector<PoseRecord> poses;
};

// Converts KITTI-style result lines (those carrying a score) into detections.
DetectionsByFrame to_detections(const GroundTruthByFrame& labels);

}  // namespace fnmine
