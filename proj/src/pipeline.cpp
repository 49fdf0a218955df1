#include "fnmine/pipeline.hpp"

#include <algorithm>

#include "fnmine/features.hpp"

namespace fnmine {

namespace {

HypothesisRecord make_record(const SequenceDataset& data, const Hypothesis& h) {
  HypothesisRecord r;
  r.sequence = data.sequence_id;
  r.hyp = h;
  r.features.r = h.confidence;
  r.features.n = h.track_length;
  return r;
}

const std::vector<ScoredBox>& at(const DetectionsByFrame& m, int frame) {
  static const std::vector<ScoredBox> empty;
  const auto it = m.find(frame);
  return it == m.end() ? empty : it->second;
}

}  // namespace

HypothesisBatch hypothesize_temporal(const SequenceDataset& data,
                                     double conf_threshold) {
  HypothesisBatch out;
  out.cohort = data.tracklets;
  for (const auto& [frame, tracks] : data.tracklets) {
    for (const Hypothesis& h : generate_temporal_hypotheses(
             tracks, at(data.left_detections, frame), conf_threshold)) {
      out.records.push_back(make_record(data, h));
    }
  }
  std::sort(out.records.begin(), out.records.end(), provenance_less);
  return out;
}

HypothesisBatch hypothesize_stereo(const SequenceDataset& data,
                                   const DisparitySource& disparity,
                                   double conf_threshold, ShiftSign sign) {
  HypothesisBatch out;
  for (const auto& [frame, right] : data.right_detections) {
    if (right.empty()) continue;
    const DisparityMap map = disparity(frame);
    const ShiftResult shifted =
        shift_detections(right, map, conf_threshold, sign);
    out.dropped += shifted.dropped;
    if (!shifted.boxes.empty()) {
      auto& cohort = out.cohort[frame];
      for (const ShiftedBox& s : shifted.boxes) {
        cohort.push_back({s.source_index, s.box, 0});
      }
    }
    for (const Hypothesis& h : generate_stereo_hypotheses(
             shifted.boxes, at(data.left_detections, frame), conf_threshold)) {
      out.records.push_back(make_record(data, h));
    }
  }
  std::sort(out.records.begin(), out.records.end(), provenance_less);
  return out;
}

void featurize_records(std::span<HypothesisRecord> records,
                       const DetectionsByFrame& detections,
                       const TrackletsByFrame& cohort, double image_width,
                       double image_height) {
  std::vector<ScoredBox> others;
  for (HypothesisRecord& r : records) {
    others.clear();
    const auto it = cohort.find(r.hyp.frame);
    if (it != cohort.end()) {
      for (const Tracklet& t : it->second) {
        if (t.track_id != r.hyp.source_id) others.push_back(t.box);
      }
    }
    r.features = featurize(r.hyp, at(detections, r.hyp.frame), others,
                           image_width, image_height);
  }
}

DetectionsByFrame predicted_errors(std::span<const HypothesisRecord> records,
                                   double threshold) {
  DetectionsByFrame out;
  for (const HypothesisRecord& r : records) {
    if (!r.score || *r.score < threshold) continue;
    out[r.hyp.frame].push_back({r.hyp.box, *r.score, Category::Car, r.hyp.frame});
  }
  return out;
}

std::map<int, int> errors_per_frame(const DetectionsByFrame& errors) {
  std::map<int, int> out;
  for (const auto& [frame, boxes] : errors) {
    out[frame] += static_cast<int>(boxes.size());
  }
  return out;
}

}  // namespace fnmine
