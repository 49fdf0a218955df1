#include "fnmine/classifier.hpp"

#include <algorithm>
#include <map>

#include "fnmine/assignment.hpp"

namespace fnmine {

bool is_positive_object(const GroundTruthObject& gt, const LabelingParams& p) {
  return !gt.is_ignore && gt.category == p.target;
}

std::vector<GroundTruthObject> missed_objects(
    std::span<const ScoredBox> detections,
    std::span<const GroundTruthObject> ground_truth,
    const LabelingParams& params) {
  std::vector<BBox> det_boxes, gt_boxes;
  std::vector<const GroundTruthObject*> positives;
  for (const ScoredBox& d : detections) {
    if (d.confidence >= params.conf_threshold) det_boxes.push_back(d.box);
  }
  for (const GroundTruthObject& g : ground_truth) {
    if (is_positive_object(g, params)) {
      gt_boxes.push_back(g.box);
      positives.push_back(&g);
    }
  }
  const MatchResult m = match_boxes(gt_boxes, det_boxes, params.min_iou);
  std::vector<GroundTruthObject> missed;
  for (std::size_t i : m.unmatched_a) missed.push_back(*positives[i]);
  return missed;
}

std::vector<HypothesisRecord> label_frame(
    std::span<const HypothesisRecord> hypotheses,
    std::span<const ScoredBox> detections,
    std::span<const GroundTruthObject> ground_truth,
    const LabelingParams& params) {
  const std::vector<GroundTruthObject> missed =
      missed_objects(detections, ground_truth, params);

  std::vector<BBox> hyp_boxes, missed_boxes;
  for (const HypothesisRecord& r : hypotheses) hyp_boxes.push_back(r.hyp.box);
  for (const GroundTruthObject& g : missed) missed_boxes.push_back(g.box);
  const MatchResult m = match_boxes(hyp_boxes, missed_boxes, params.min_iou);

  std::vector<char> valid(hypotheses.size(), 0);
  for (const MatchPair& p : m.pairs) valid[p.a] = 1;

  std::vector<HypothesisRecord> out;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    HypothesisRecord rec = hypotheses[i];
    if (valid[i]) {
      rec.label = Label::ValidError;
      out.push_back(std::move(rec));
      continue;
    }
    bool on_positive = false;
    bool on_ignore = false;
    for (const GroundTruthObject& g : ground_truth) {
      if (iou(rec.hyp.box, g.box) < params.min_iou) continue;
      (is_positive_object(g, params) ? on_positive : on_ignore) = true;
    }
    if (on_ignore && !on_positive) continue;
    rec.label = Label::Invalid;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<HypothesisRecord> label_hypotheses(
    std::span<const HypothesisRecord> hypotheses,
    const DetectionsByFrame& detections, const GroundTruthByFrame& ground_truth,
    const LabelingParams& params) {
  // Group per (sequence, frame) so multi-sequence inputs stay separate.
  std::map<std::pair<std::string, int>, std::vector<HypothesisRecord>> groups;
  for (const HypothesisRecord& r : hypotheses) {
    groups[{r.sequence, r.hyp.frame}].push_back(r);
  }
  static const std::vector<ScoredBox> kNoDets;
  static const std::vector<GroundTruthObject> kNoGt;

  std::vector<HypothesisRecord> out;
  for (auto& [key, recs] : groups) {
    const auto d = detections.find(key.second);
    const auto g = ground_truth.find(key.second);
    auto labeled = label_frame(recs, d == detections.end() ? kNoDets : d->second,
                               g == ground_truth.end() ? kNoGt : g->second,
                               params);
    std::move(labeled.begin(), labeled.end(), std::back_inserter(out));
  }
  std::stable_sort(out.begin(), out.end(), provenance_less);
  return out;
}

TrainingSet make_training_set(std::span<const HypothesisRecord> records,
                              Cue cue) {
  std::vector<const HypothesisRecord*> sorted;
  sorted.reserve(records.size());
  for (const HypothesisRecord& r : records) {
    if (r.hyp.cue != cue) {
      throw ModelError("training record of cue '" +
                       std::string(to_string(r.hyp.cue)) + "' in a '" +
                       std::string(to_string(cue)) + "' training set");
    }
    if (!r.label) throw ModelError("training record without a label");
    sorted.push_back(&r);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const HypothesisRecord* a, const HypothesisRecord* b) {
                     return provenance_less(*a, *b);
                   });

  TrainingSet set;
  set.feature_count = feature_count_for(cue);
  for (const HypothesisRecord* r : sorted) {
    set.add(model_inputs(r->features, cue),
            *r->label == Label::ValidError ? 1 : 0);
  }
  return set;
}

ForestModel train_cue_model(std::span<const HypothesisRecord> records, Cue cue,
                            const ForestParams& params) {
  return train_forest(make_training_set(records, cue), cue, params);
}

void score_records(const ForestModel& model,
                   std::span<HypothesisRecord> records) {
  for (HypothesisRecord& r : records) {
    if (r.hyp.cue != model.cue) {
      throw ModelError("a '" + std::string(to_string(model.cue)) +
                       "' model cannot score '" +
                       std::string(to_string(r.hyp.cue)) + "' hypotheses");
    }
    r.score = predict(model, model_inputs(r.features, model.cue));
  }
}

}  // namespace fnmine
