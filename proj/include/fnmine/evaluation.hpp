#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/hypothesis.hpp"

namespace fnmine {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tie-break key for equal scores.
struct RankKey {
  std::string sequence;
  int frame = 0;
  BBox box;

  friend auto operator<=>(const RankKey&, const RankKey&) = default;
  friend bool operator==(const RankKey&, const RankKey&) = default;
};

struct ScoredItem {
  double score = 0.0;
  bool positive = false;
  RankKey key;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
  double threshold = 0.0;
};

struct ApResult {
  double ap = 0.0;
  std::vector<PrPoint> pr_points;
  std::size_t positives = 0;
  std::size_t items = 0;
};

// All-point AP over the ranked list: sum of (R_k - R_{k-1}) * P_k at every
// rank that hits a positive. Items are ranked by descending score, ties by
// ascending key. Recall is relative to `total_positives` when given (e.g. all
// ground-truth objects for detector AP), otherwise to the positives in the
// list. Throws EvalError when there are no positives.
ApResult average_precision(std::vector<ScoredItem> items,
                           std::optional<std::size_t> total_positives = {});

// Flags every hypothesis as an error: a single operating point at full
// recall whose precision is the valid fraction.
ApResult naive_baseline(std::span<const HypothesisRecord> labeled);

// Labeled and scored records as ranking items. Throws EvalError when a record
// lacks a label or score.
std::vector<ScoredItem> scored_items(std::span<const HypothesisRecord> records);

struct DetectionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  // 2TP / (2TP + FP + FN); 0 when all counts are zero.
  double f1() const;
  DetectionCounts& operator+=(const DetectionCounts& o);
};

struct DetectionEvalParams {
  double min_iou = 0.5;
  double conf_threshold = 0.5;
  Category target = Category::Car;
};

// One-to-one matching of detections to positive ground truth per frame.
// Unmatched detections that overlap an ignore region are not counted.
DetectionCounts count_detections(const DetectionsByFrame& detections,
                                 const GroundTruthByFrame& ground_truth,
                                 const DetectionEvalParams& params);

struct F1Result {
  DetectionCounts before;
  DetectionCounts after;
  double f1_before() const { return before.f1(); }
  double f1_after() const { return after.f1(); }
  F1Result& operator+=(const F1Result& o);
};

// Compares detector F1 with and without predicted errors. Predicted errors
// are already thresholded; they join the confident detections and the union
// is deduplicated with NMS at `nms_overlap` per frame.
F1Result f1_with_corrections(const DetectionsByFrame& detections,
                             const DetectionsByFrame& predicted_errors,
                             const GroundTruthByFrame& ground_truth,
                             const DetectionEvalParams& params = {},
                             double nms_overlap = 0.7);

struct FusionStats {
  std::size_t temporal_total = 0;
  std::size_t stereo_total = 0;
  // Cross-cue pairs matched one-to-one at IoU >= the fusion overlap.
  std::size_t intersection = 0;
  std::size_t temporal_unique = 0;
  std::size_t stereo_unique = 0;
  std::size_t fused_total = 0;

  FusionStats& operator+=(const FusionStats& o);
};

struct FusionResult {
  std::vector<ScoredBox> fused;
  FusionStats stats;
};

// Fuses the errors of one frame: concatenation followed by NMS.
FusionResult fuse_cues(std::span<const ScoredBox> temporal_errors,
                       std::span<const ScoredBox> stereo_errors,
                       double min_overlap = 0.7);

// fuse_cues applied frame by frame; stats are summed.
FusionResult fuse_cues(const DetectionsByFrame& temporal_errors,
                       const DetectionsByFrame& stereo_errors,
                       double min_overlap = 0.7);

// Ranking items for detector AP: greedy matching by confidence to positive
// ground truth; detections on ignore regions are skipped. Adds the number of
// positive objects to `positives`.
std::vector<ScoredItem> detector_items(const DetectionsByFrame& detections,
                                       const GroundTruthByFrame& ground_truth,
                                       const DetectionEvalParams& params,
                                       const std::string& sequence,
                                       std::size_t& positives);

// Detector AP over one sequence. Confidence threshold is not applied.
ApResult detector_average_precision(const DetectionsByFrame& detections,
                                    const GroundTruthByFrame& ground_truth,
                                    const DetectionEvalParams& params);

}  // namespace fnmine
