#include "fnmine/features.hpp"

#include <algorithm>

#include "fnmine/hypothesis.hpp"

namespace fnmine {

std::array<double, kFeatureCount> FeatureVector::to_array() const {
  return {x,       y,          w,           h,
          r,       det_cnt,    med_det_ov,  med_det_cnf,
          hyp_cnt, med_hyp_ov, med_hyp_cnf, n};
}

FeatureVector FeatureVector::from_array(
    const std::array<double, kFeatureCount>& v) {
  return {v[0], v[1], v[2], v[3], v[4],  v[5],
          v[6], v[7], v[8], v[9], v[10], v[11]};
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

namespace {

struct OverlapStats {
  double count = 0.0;
  double med_overlap = 0.0;
  double med_confidence = 0.0;
};

OverlapStats overlap_stats(const BBox& box, std::span<const ScoredBox> others) {
  std::vector<double> overlaps, confidences;
  for (const ScoredBox& o : others) {
    const double ov = iou(box, o.box);
    if (ov > 0.0) {
      overlaps.push_back(ov);
      confidences.push_back(o.confidence);
    }
  }
  return {static_cast<double>(overlaps.size()), median(overlaps),
          median(confidences)};
}

}  // namespace

FeatureVector featurize(const Hypothesis& h,
                        std::span<const ScoredBox> detections,
                        std::span<const ScoredBox> cohort, double image_width,
                        double image_height) {
  FeatureVector f;
  const NormalizedBox nb = normalize(h.box, image_width, image_height);
  f.x = nb.x;
  f.y = nb.y;
  f.w = nb.w;
  f.h = nb.h;
  f.r = h.confidence;

  const OverlapStats det = overlap_stats(h.box, detections);
  f.det_cnt = det.count;
  f.med_det_ov = det.med_overlap;
  f.med_det_cnf = det.med_confidence;

  const OverlapStats hyp = overlap_stats(h.box, cohort);
  f.hyp_cnt = hyp.count;
  f.med_hyp_ov = hyp.med_overlap;
  f.med_hyp_cnf = hyp.med_confidence;

  f.n = h.cue == Cue::Temporal ? static_cast<double>(h.track_length) : 0.0;
  return f;
}

}  // namespace fnmine
