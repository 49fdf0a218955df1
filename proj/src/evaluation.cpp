#include "fnmine/evaluation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fnmine/assignment.hpp"

namespace fnmine {

namespace {

bool positive_object(const GroundTruthObject& g, const DetectionEvalParams& p) {
  return !g.is_ignore && g.category == p.target;
}

const std::vector<ScoredBox>& frame_boxes(const DetectionsByFrame& m, int frame) {
  static const std::vector<ScoredBox> kNone;
  const auto it = m.find(frame);
  return it == m.end() ? kNone : it->second;
}

const std::vector<GroundTruthObject>& frame_gt(const GroundTruthByFrame& m,
                                               int frame) {
  static const std::vector<GroundTruthObject> kNone;
  const auto it = m.find(frame);
  return it == m.end() ? kNone : it->second;
}

DetectionCounts count_frame(std::span<const ScoredBox> dets,
                            std::span<const GroundTruthObject> gt,
                            const DetectionEvalParams& params) {
  std::vector<BBox> det_boxes, pos_boxes, ignore_boxes;
  for (const ScoredBox& d : dets) det_boxes.push_back(d.box);
  for (const GroundTruthObject& g : gt) {
    (positive_object(g, params) ? pos_boxes : ignore_boxes).push_back(g.box);
  }
  const MatchResult m = match_boxes(det_boxes, pos_boxes, params.min_iou);
  DetectionCounts c;
  c.tp = m.pairs.size();
  c.fn = m.unmatched_b.size();
  for (std::size_t i : m.unmatched_a) {
    const bool ignored =
        std::any_of(ignore_boxes.begin(), ignore_boxes.end(),
                    [&](const BBox& b) { return iou(det_boxes[i], b) >= params.min_iou; });
    if (!ignored) ++c.fp;
  }
  return c;
}

std::set<int> frames_of(const DetectionsByFrame& a, const DetectionsByFrame& b,
                        const GroundTruthByFrame& g) {
  std::set<int> frames;
  for (const auto& kv : a) frames.insert(kv.first);
  for (const auto& kv : b) frames.insert(kv.first);
  for (const auto& kv : g) frames.insert(kv.first);
  return frames;
}

}  // namespace

ApResult average_precision(std::vector<ScoredItem> items,
                           std::optional<std::size_t> total_positives) {
  const auto in_list = static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [](const ScoredItem& i) { return i.positive; }));
  const std::size_t npos = total_positives.value_or(in_list);
  if (npos == 0) {
    throw EvalError("average precision is undefined without positive labels");
  }

  std::sort(items.begin(), items.end(),
            [](const ScoredItem& a, const ScoredItem& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.key < b.key;
            });

  ApResult result;
  result.positives = npos;
  result.items = items.size();
  result.pr_points.reserve(items.size());
  std::size_t tp = 0;
  double ap = 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].positive) ++tp;
    const double precision =
        static_cast<double>(tp) / static_cast<double>(k + 1);
    const double recall = static_cast<double>(tp) / static_cast<double>(npos);
    // Recall steps by exactly 1/npos at each positive.
    if (items[k].positive) ap += precision / static_cast<double>(npos);
    result.pr_points.push_back({recall, precision, items[k].score});
  }
  result.ap = std::clamp(ap, 0.0, 1.0);
  return result;
}

ApResult naive_baseline(std::span<const HypothesisRecord> labeled) {
  ApResult result;
  result.items = labeled.size();
  for (const HypothesisRecord& r : labeled) {
    if (!r.label) throw EvalError("naive baseline needs labeled hypotheses");
    if (*r.label == Label::ValidError) ++result.positives;
  }
  if (result.items == 0) return result;
  const double precision = static_cast<double>(result.positives) /
                           static_cast<double>(result.items);
  result.ap = precision;
  result.pr_points.push_back({result.positives > 0 ? 1.0 : 0.0, precision, 1.0});
  return result;
}

std::vector<ScoredItem> scored_items(std::span<const HypothesisRecord> records) {
  std::vector<ScoredItem> items;
  items.reserve(records.size());
  for (const HypothesisRecord& r : records) {
    if (!r.label) throw EvalError("record without a label");
    if (!r.score) throw EvalError("record without a score");
    items.push_back({*r.score, *r.label == Label::ValidError,
                     {r.sequence, r.hyp.frame, r.hyp.box}});
  }
  return items;
}

double DetectionCounts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double DetectionCounts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double DetectionCounts::f1() const {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0
                    : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

DetectionCounts& DetectionCounts::operator+=(const DetectionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

DetectionCounts count_detections(const DetectionsByFrame& detections,
                                 const GroundTruthByFrame& ground_truth,
                                 const DetectionEvalParams& params) {
  DetectionCounts total;
  for (int frame : frames_of(detections, {}, ground_truth)) {
    const auto dets =
        confidence_filter(frame_boxes(detections, frame), params.conf_threshold);
    total += count_frame(dets, frame_gt(ground_truth, frame), params);
  }
  return total;
}

F1Result& F1Result::operator+=(const F1Result& o) {
  before += o.before;
  after += o.after;
  return *this;
}

F1Result f1_with_corrections(const DetectionsByFrame& detections,
                             const DetectionsByFrame& predicted_errors,
                             const GroundTruthByFrame& ground_truth,
                             const DetectionEvalParams& params,
                             double nms_overlap) {
  F1Result result;
  for (int frame : frames_of(detections, predicted_errors, ground_truth)) {
    const auto& gt = frame_gt(ground_truth, frame);
    auto dets =
        confidence_filter(frame_boxes(detections, frame), params.conf_threshold);
    result.before += count_frame(dets, gt, params);

    const auto& errors = frame_boxes(predicted_errors, frame);
    dets.insert(dets.end(), errors.begin(), errors.end());
    result.after += count_frame(nms(dets, nms_overlap), gt, params);
  }
  return result;
}

FusionStats& FusionStats::operator+=(const FusionStats& o) {
  temporal_total += o.temporal_total;
  stereo_total += o.stereo_total;
  intersection += o.intersection;
  temporal_unique += o.temporal_unique;
  stereo_unique += o.stereo_unique;
  fused_total += o.fused_total;
  return *this;
}

FusionResult fuse_cues(std::span<const ScoredBox> temporal_errors,
                       std::span<const ScoredBox> stereo_errors,
                       double min_overlap) {
  FusionResult result;
  std::vector<ScoredBox> all(temporal_errors.begin(), temporal_errors.end());
  all.insert(all.end(), stereo_errors.begin(), stereo_errors.end());
  result.fused = nms(all, min_overlap);

  std::vector<BBox> t_boxes, s_boxes;
  for (const ScoredBox& b : temporal_errors) t_boxes.push_back(b.box);
  for (const ScoredBox& b : stereo_errors) s_boxes.push_back(b.box);
  const MatchResult m = match_boxes(t_boxes, s_boxes, min_overlap);

  FusionStats& s = result.stats;
  s.temporal_total = temporal_errors.size();
  s.stereo_total = stereo_errors.size();
  s.intersection = m.pairs.size();
  s.temporal_unique = m.unmatched_a.size();
  s.stereo_unique = m.unmatched_b.size();
  s.fused_total = result.fused.size();
  return result;
}

FusionResult fuse_cues(const DetectionsByFrame& temporal_errors,
                       const DetectionsByFrame& stereo_errors,
                       double min_overlap) {
  FusionResult result;
  for (int frame : frames_of(temporal_errors, stereo_errors, {})) {
    FusionResult f = fuse_cues(frame_boxes(temporal_errors, frame),
                               frame_boxes(stereo_errors, frame), min_overlap);
    result.fused.insert(result.fused.end(), f.fused.begin(), f.fused.end());
    result.stats += f.stats;
  }
  return result;
}

std::vector<ScoredItem> detector_items(const DetectionsByFrame& detections,
                                       const GroundTruthByFrame& ground_truth,
                                       const DetectionEvalParams& params,
                                       const std::string& sequence,
                                       std::size_t& positives) {
  std::vector<ScoredItem> items;
  for (int frame : frames_of(detections, {}, ground_truth)) {
    const auto& gt = frame_gt(ground_truth, frame);
    std::vector<const GroundTruthObject*> pos, ign;
    for (const GroundTruthObject& g : gt) {
      (positive_object(g, params) ? pos : ign).push_back(&g);
    }
    positives += pos.size();

    auto dets = frame_boxes(detections, frame);
    std::stable_sort(dets.begin(), dets.end(),
                     [](const ScoredBox& a, const ScoredBox& b) {
                       return a.confidence > b.confidence;
                     });
    std::vector<char> taken(pos.size(), 0);
    for (const ScoredBox& d : dets) {
      double best = params.min_iou;
      int best_idx = -1;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (taken[i]) continue;
        const double ov = iou(d.box, pos[i]->box);
        if (ov >= best) {
          best = ov;
          best_idx = static_cast<int>(i);
        }
      }
      if (best_idx >= 0) {
        taken[static_cast<std::size_t>(best_idx)] = 1;
        items.push_back({d.confidence, true, {sequence, frame, d.box}});
        continue;
      }
      const bool ignored = std::any_of(ign.begin(), ign.end(), [&](const auto* g) {
        return iou(d.box, g->box) >= params.min_iou;
      });
      if (!ignored) items.push_back({d.confidence, false, {sequence, frame, d.box}});
    }
  }
  return items;
}

ApResult detector_average_precision(const DetectionsByFrame& detections,
                                    const GroundTruthByFrame& ground_truth,
                                    const DetectionEvalParams& params) {
  std::size_t positives = 0;
  auto items = detector_items(detections, ground_truth, params, "", positives);
  return average_precision(std::move(items), positives);
}

}  // namespace fnmine
