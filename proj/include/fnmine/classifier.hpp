#pragma once

#include <span>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/forest.hpp"
#include "fnmine/hypothesis.hpp"

namespace fnmine {

struct LabelingParams {
  double min_iou = 0.5;
  // Detections under this confidence do not count as detected.
  double conf_threshold = 0.5;
  // Ground truth of other categories is treated like an ignore region.
  Category target = Category::Car;
};

// Ground truth at one frame that counts as a positive object.
bool is_positive_object(const GroundTruthObject& gt, const LabelingParams& p);

// Positive ground truth left unmatched by the detections (IoU >= min_iou).
std::vector<GroundTruthObject> missed_objects(
    std::span<const ScoredBox> detections,
    std::span<const GroundTruthObject> ground_truth,
    const LabelingParams& params);

// Labels the hypotheses of a single frame. A hypothesis matched one-to-one to
// a missed object is a valid error. Unmatched hypotheses that only overlap
// ignore regions are dropped from the result; the rest are invalid. Order of
// the surviving records is preserved.
std::vector<HypothesisRecord> label_frame(
    std::span<const HypothesisRecord> hypotheses,
    std::span<const ScoredBox> detections,
    std::span<const GroundTruthObject> ground_truth,
    const LabelingParams& params = {});

// Applies label_frame frame by frame. Output is in provenance order.
std::vector<HypothesisRecord> label_hypotheses(
    std::span<const HypothesisRecord> hypotheses,
    const DetectionsByFrame& detections, const GroundTruthByFrame& ground_truth,
    const LabelingParams& params = {});

// Labeled records of one cue, canonically sorted, as model inputs.
// Throws ModelError when a record is unlabeled or of another cue.
TrainingSet make_training_set(std::span<const HypothesisRecord> records, Cue cue);

ForestModel train_cue_model(std::span<const HypothesisRecord> records, Cue cue,
                            const ForestParams& params);

// Writes model probabilities into record.score. Throws ModelError when a
// record's cue differs from the model's.
void score_records(const ForestModel& model, std::span<HypothesisRecord> records);

}  // namespace fnmine
