#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/hypothesis.hpp"
#include "fnmine/stereo.hpp"
#include "fnmine/temporal.hpp"

namespace fnmine {

using DisparitySource = std::function<DisparityMap(int frame)>;

// Hypotheses of one cue over one sequence, plus the boxes each hypothesis is
// compared against when featurized (tracklets for temporal, shifted right
// detections for stereo, keyed by source id).
struct HypothesisBatch {
  // Features are zero except r and n.
  std::vector<HypothesisRecord> records;
  TrackletsByFrame cohort;
  // Right detections lost to missing disparity or leaving the image.
  std::size_t dropped = 0;
};

HypothesisBatch hypothesize_temporal(const SequenceDataset& data,
                                     double conf_threshold);

// The disparity source is queried only for frames with right detections.
HypothesisBatch hypothesize_stereo(const SequenceDataset& data,
                                   const DisparitySource& disparity,
                                   double conf_threshold,
                                   ShiftSign sign = ShiftSign::Positive);

// Fills every feature from the frame's detections and the cohort boxes of
// other sources.
void featurize_records(std::span<HypothesisRecord> records,
                       const DetectionsByFrame& detections,
                       const TrackletsByFrame& cohort, double image_width,
                       double image_height);

// Scored records at or above the threshold as boxes carrying their score.
DetectionsByFrame predicted_errors(std::span<const HypothesisRecord> records,
                                   double threshold);

std::map<int, int> errors_per_frame(const DetectionsByFrame& errors);

}  // namespace fnmine
