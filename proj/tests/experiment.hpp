#pragma once

// In-memory end-to-end run over synthetic sequences: mine both cues, label,
// train on the first sequences, score and evaluate the rest.

#include <map>
#include <string>
#include <vector>

#include "fnmine/classifier.hpp"
#include "fnmine/evaluation.hpp"
#include "fnmine/pipeline.hpp"
#include "fnmine/synth.hpp"

namespace fnmine::testing {

struct MinedSequence {
  SynthSequence seq;
  std::vector<HypothesisRecord> temporal;  // labeled
  std::vector<HypothesisRecord> stereo;    // labeled
};

inline MinedSequence mine_sequence(const SynthConfig& cfg, int index,
                                   const LabelingParams& lp = {}) {
  MinedSequence m;
  m.seq = generate_sequence(cfg, index);
  const SequenceDataset& d = m.seq.data;

  HypothesisBatch t = hypothesize_temporal(d, lp.conf_threshold);
  featurize_records(t.records, d.left_detections, t.cohort, d.image_width,
                    d.image_height);
  m.temporal = label_hypotheses(t.records, d.left_detections, d.ground_truth, lp);

  const SynthSequence& seq = m.seq;
  HypothesisBatch s = hypothesize_stereo(
      d, [&seq](int frame) { return render_disparity(seq, frame); },
      lp.conf_threshold);
  featurize_records(s.records, d.left_detections, s.cohort, d.image_width,
                    d.image_height);
  m.stereo = label_hypotheses(s.records, d.left_detections, d.ground_truth, lp);
  return m;
}

struct CueReport {
  ApResult classifier;
  ApResult naive;
  std::size_t train_records = 0;
  std::size_t train_positives = 0;
  ForestModel model;
};

struct ExperimentReport {
  CueReport temporal;
  CueReport stereo;
  F1Result f1;
  FusionStats fusion;
  std::size_t fused_violations = 0;  // fused pairs with IoU >= 0.7
  OracleAgreement oracle;
  std::vector<MinedSequence> sequences;  // scored where evaluated
};

struct ExperimentConfig {
  SynthConfig synth;
  int train_sequences = 4;
  double operating_threshold = 0.5;
  ForestParams forest;
  LabelingParams labeling;
};

inline std::vector<HypothesisRecord> gather(const std::vector<MinedSequence>& seqs,
                                            int begin, int end, Cue cue) {
  std::vector<HypothesisRecord> out;
  for (int i = begin; i < end; ++i) {
    const auto& src = cue == Cue::Temporal ? seqs[i].temporal : seqs[i].stereo;
    out.insert(out.end(), src.begin(), src.end());
  }
  return out;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  const int n = cfg.synth.n_sequences;
  for (int i = 0; i < n; ++i) {
    rep.sequences.push_back(mine_sequence(cfg.synth, i, cfg.labeling));
  }

  std::map<std::string, std::vector<OracleMiss>> oracle;
  std::vector<HypothesisRecord> all_labeled;
  for (const MinedSequence& m : rep.sequences) {
    oracle[m.seq.data.sequence_id] = m.seq.oracle_misses;
    all_labeled.insert(all_labeled.end(), m.temporal.begin(), m.temporal.end());
    all_labeled.insert(all_labeled.end(), m.stereo.begin(), m.stereo.end());
  }
  rep.oracle = oracle_label_check(all_labeled, oracle);

  for (Cue cue : {Cue::Temporal, Cue::Stereo}) {
    CueReport& cr = cue == Cue::Temporal ? rep.temporal : rep.stereo;
    const auto train = gather(rep.sequences, 0, cfg.train_sequences, cue);
    cr.model = train_cue_model(train, cue, cfg.forest);
    cr.train_records = train.size();
    cr.train_positives = cr.model.n_positive;
    for (int i = cfg.train_sequences; i < n; ++i) {
      auto& recs = cue == Cue::Temporal ? rep.sequences[i].temporal
                                        : rep.sequences[i].stereo;
      score_records(cr.model, recs);
    }
    const auto eval = gather(rep.sequences, cfg.train_sequences, n, cue);
    cr.classifier = average_precision(scored_items(eval));
    cr.naive = naive_baseline(eval);
  }

  for (int i = cfg.train_sequences; i < n; ++i) {
    const MinedSequence& m = rep.sequences[i];
    const auto te = predicted_errors(m.temporal, cfg.operating_threshold);
    const auto se = predicted_errors(m.stereo, cfg.operating_threshold);
    FusionResult fused = fuse_cues(te, se);
    rep.fusion += fused.stats;
    DetectionsByFrame by_frame;
    for (const ScoredBox& b : fused.fused) by_frame[b.frame].push_back(b);
    for (const auto& [frame, boxes] : by_frame) {
      for (std::size_t a = 0; a < boxes.size(); ++a) {
        for (std::size_t b = a + 1; b < boxes.size(); ++b) {
          if (iou(boxes[a].box, boxes[b].box) >= 0.7) ++rep.fused_violations;
        }
      }
    }
    DetectionEvalParams ep;
    ep.min_iou = cfg.labeling.min_iou;
    ep.conf_threshold = cfg.labeling.conf_threshold;
    rep.f1 += f1_with_corrections(m.seq.data.left_detections, by_frame,
                                  m.seq.data.ground_truth, ep);
  }
  return rep;
}

}  // namespace fnmine::testing
