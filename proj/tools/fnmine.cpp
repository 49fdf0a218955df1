// fnmine: mine false negatives of an object detector from temporal and stereo
// inconsistencies. Every stage reads and writes plain files.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnmine/classifier.hpp"
#include "fnmine/evaluation.hpp"
#include "fnmine/geo.hpp"
#include "fnmine/io.hpp"
#include "fnmine/pipeline.hpp"
#include "fnmine/store.hpp"
#include "fnmine/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fnmine;

namespace {

// Bad input data (as opposed to bad flags).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RecordsBySequence = std::map<std::string, std::vector<HypothesisRecord>>;

constexpr const char* kHypFile = "hypotheses.csv";
constexpr const char* kCohortFile = "cohort.txt";
constexpr const char* kErrorsFile = "errors.txt";

void write_stage(const fs::path& out, const std::string& stage,
                 const json& manifest, const json& summary) {
  json doc;
  doc["stage"] = stage;
  doc["manifest"] = manifest;
  doc["summary"] = summary;
  write_text_file(out / (stage + ".json"), doc.dump(2) + "\n");
  std::cout << summary.dump() << '\n';
}

std::set<std::string> selection(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

bool selected(const std::set<std::string>& sel, const std::string& id) {
  return sel.empty() || sel.count(id) > 0;
}

std::vector<LoadedSequence> load_data(const fs::path& root,
                                      const std::set<std::string>& sel = {}) {
  std::vector<LoadedSequence> out;
  for (const fs::path& dir : list_sequences(root)) {
    LoadedSequence s = load_sequence(dir);
    if (selected(sel, s.data.sequence_id)) out.push_back(std::move(s));
  }
  if (out.empty()) throw DataError(root.string() + ": no sequences found");
  return out;
}

RecordsBySequence read_hyp_dir(const fs::path& dir,
                               const std::set<std::string>& sel = {}) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  RecordsBySequence out;
  std::vector<fs::path> seqs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / kHypFile)) seqs.push_back(e.path());
  }
  std::sort(seqs.begin(), seqs.end());
  for (const fs::path& p : seqs) {
    const std::string id = p.filename().string();
    if (!selected(sel, id)) continue;
    out[id] = parse_file(p / kHypFile, [&](std::istream& in) {
      return read_hypotheses_csv(in, id);
    });
  }
  if (out.empty()) throw DataError(dir.string() + ": no hypothesis tables found");
  return out;
}

void write_records(const fs::path& dir, const std::string& id,
                   const std::vector<HypothesisRecord>& records) {
  write_file(dir / id / kHypFile,
             [&](std::ostream& o) { write_hypotheses_csv(o, records); });
}

std::size_t count(const RecordsBySequence& r) {
  std::size_t n = 0;
  for (const auto& [id, v] : r) n += v.size();
  return n;
}

Cue single_cue(const RecordsBySequence& recs, const fs::path& where) {
  std::optional<Cue> cue;
  for (const auto& [id, v] : recs) {
    for (const HypothesisRecord& r : v) {
      if (cue && *cue != r.hyp.cue) {
        throw DataError(where.string() + ": hypotheses mix temporal and stereo cues");
      }
      cue = r.hyp.cue;
    }
  }
  if (!cue) throw DataError(where.string() + ": no hypotheses");
  return *cue;
}

const LoadedSequence& find_sequence(const std::vector<LoadedSequence>& data,
                                    const std::string& id) {
  for (const LoadedSequence& s : data) {
    if (s.data.sequence_id == id) return s;
  }
  throw DataError("sequence '" + id + "' is not in the data directory");
}

json ap_json(const ApResult& r) {
  return {{"ap", r.ap}, {"positives", r.positives}, {"items", r.items}};
}

json counts_json(const DetectionCounts& c) {
  return {{"tp", c.tp},         {"fp", c.fp},          {"fn", c.fn},
          {"precision", c.precision()}, {"recall", c.recall()}, {"f1", c.f1()}};
}

// --- stages -----------------------------------------------------------------

struct SynthArgs {
  std::string out;
  SynthConfig cfg;
};

void run_synth(const SynthArgs& a) {
  validate(a.cfg);
  const fs::path out = a.out;
  fs::create_directories(out);
  std::size_t dets = 0, gt = 0, misses = 0;
  json sequences = json::array();
  for (int i = 0; i < a.cfg.n_sequences; ++i) {
    const SynthSequence seq = generate_sequence(a.cfg, i);
    write_synth_sequence(out / seq.data.sequence_id, seq);
    for (const auto& [f, v] : seq.data.left_detections) dets += v.size();
    for (const auto& [f, v] : seq.data.ground_truth) gt += v.size();
    misses += seq.oracle_misses.size();
    sequences.push_back(seq.data.sequence_id);
  }
  const SynthConfig& c = a.cfg;
  json manifest{{"out", a.out},
                {"seed", c.seed},
                {"sequences", c.n_sequences},
                {"frames", c.frames_per_sequence},
                {"width", c.image_width},
                {"height", c.image_height},
                {"min_objects", c.min_objects},
                {"max_objects", c.max_objects},
                {"miss_prob", c.miss_probability},
                {"fp_rate", c.fp_rate},
                {"confidence_noise", c.confidence_noise},
                {"jitter", c.box_jitter_px},
                {"disparity_error_prob", c.disparity_error_probability},
                {"speckle", c.speckle_fraction},
                {"stereo_independent", c.stereo_independent}};
  write_text_file(out / "manifest.json",
                  json{{"sequences", sequences}}.dump(2) + "\n");
  write_stage(out, "synth", manifest,
              {{"sequences", c.n_sequences},
               {"ground_truth_objects", gt},
               {"left_detections", dets},
               {"oracle_misses", misses}});
}

struct HypArgs {
  std::string data;
  std::string out;
  double conf = 0.5;
  std::vector<std::string> sequences;
};

void run_hypothesize(const HypArgs& a, Cue cue) {
  const auto data = load_data(a.data, selection(a.sequences));
  const fs::path out = a.out;
  std::size_t total = 0, dropped = 0;
  for (const LoadedSequence& s : data) {
    const fs::path dir = s.dir;
    HypothesisBatch batch =
        cue == Cue::Temporal
            ? hypothesize_temporal(s.data, a.conf)
            : hypothesize_stereo(
                  s.data,
                  [&dir](int frame) {
                    return parse_file(disparity_path(dir, frame),
                                      [](std::istream& in) { return read_disparity(in); });
                  },
                  a.conf);
    total += batch.records.size();
    dropped += batch.dropped;
    write_records(out, s.data.sequence_id, batch.records);
    write_file(out / s.data.sequence_id / kCohortFile,
               [&](std::ostream& o) { write_tracklets(o, batch.cohort); });
  }
  json summary{{"cue", std::string(to_string(cue))},
               {"sequences", data.size()},
               {"hypotheses", total}};
  if (cue == Cue::Stereo) summary["dropped_detections"] = dropped;
  write_stage(out, "hypothesize-" + std::string(to_string(cue)),
              {{"data", a.data}, {"out", a.out}, {"conf_threshold", a.conf},
               {"sequences", a.sequences}},
              summary);
}

struct FeaturizeArgs {
  std::string data;
  std::string hyp;
  std::string out;
};

void run_featurize(const FeaturizeArgs& a) {
  RecordsBySequence recs = read_hyp_dir(a.hyp);
  const auto data = load_data(a.data, [&] {
    std::set<std::string> s;
    for (const auto& [id, v] : recs) s.insert(id);
    return s;
  }());
  for (auto& [id, v] : recs) {
    const LoadedSequence& s = find_sequence(data, id);
    const TrackletsByFrame cohort = parse_file(
        fs::path(a.hyp) / id / kCohortFile,
        [](std::istream& in) { return parse_tracklets(in); });
    featurize_records(v, s.data.left_detections, cohort, s.data.image_width,
                      s.data.image_height);
    write_records(a.out, id, v);
    if (fs::path(a.out) != fs::path(a.hyp)) {
      fs::create_directories(fs::path(a.out) / id);
      fs::copy_file(fs::path(a.hyp) / id / kCohortFile,
                    fs::path(a.out) / id / kCohortFile,
                    fs::copy_options::overwrite_existing);
    }
  }
  write_stage(a.out, "featurize",
              {{"data", a.data}, {"hyp", a.hyp}, {"out", a.out}},
              {{"sequences", recs.size()}, {"hypotheses", count(recs)}});
}

struct LabelArgs {
  std::string data;
  std::string hyp;
  std::string out;
  double conf = 0.5;
  double min_iou = 0.5;
};

std::vector<LoadedSequence> load_labeled(const std::string& root,
                                         const RecordsBySequence& recs,
                                         const char* stage) {
  std::set<std::string> ids;
  for (const auto& [id, v] : recs) ids.insert(id);
  auto data = load_data(root, ids);
  for (const LoadedSequence& s : data) {
    if (!s.has_labels) {
      throw DataError(std::string(stage) + " needs ground truth, but " +
                      (s.dir / "labels.txt").string() + " does not exist");
    }
  }
  return data;
}

void run_label(const LabelArgs& a) {
  RecordsBySequence recs = read_hyp_dir(a.hyp);
  const auto data = load_labeled(a.data, recs, "label");
  LabelingParams lp;
  lp.conf_threshold = a.conf;
  lp.min_iou = a.min_iou;
  std::size_t valid = 0, invalid = 0, excluded = 0;
  for (auto& [id, v] : recs) {
    const LoadedSequence& s = find_sequence(data, id);
    auto labeled = label_hypotheses(v, s.data.left_detections, s.data.ground_truth, lp);
    excluded += v.size() - labeled.size();
    for (const HypothesisRecord& r : labeled) {
      (*r.label == Label::ValidError ? valid : invalid) += 1;
    }
    write_records(a.out, id, labeled);
  }
  write_stage(a.out, "label",
              {{"data", a.data}, {"hyp", a.hyp}, {"out", a.out},
               {"conf_threshold", a.conf}, {"min_iou", a.min_iou}},
              {{"valid", valid}, {"invalid", invalid}, {"excluded_ignore", excluded}});
}

struct TrainArgs {
  std::string hyp;
  std::string out;
  std::vector<std::string> sequences;
  std::uint64_t seed = 0;
  int trees = 30;
};

void run_train(const TrainArgs& a) {
  const RecordsBySequence recs = read_hyp_dir(a.hyp, selection(a.sequences));
  const Cue cue = single_cue(recs, a.hyp);
  std::vector<HypothesisRecord> all;
  for (const auto& [id, v] : recs) all.insert(all.end(), v.begin(), v.end());
  ForestParams params;
  params.n_trees = a.trees;
  params.seed = a.seed;
  const ForestModel model = train_cue_model(all, cue, params);
  write_file(a.out, [&](std::ostream& o) { write_model(o, model); });
  const FeatureImportances imp = feature_importances(model);
  json weights;
  for (std::size_t i = 0; i < imp.weights.size(); ++i) {
    weights[std::string(kFeatureNames[i])] = imp.weights[i];
  }
  json trained = json::array();
  for (const auto& [id, v] : recs) trained.push_back(id);
  const fs::path out_dir = fs::path(a.out).has_parent_path()
                               ? fs::path(a.out).parent_path()
                               : fs::path(".");
  write_stage(out_dir, "train",
              {{"hyp", a.hyp}, {"out", a.out}, {"sequences", trained},
               {"seed", a.seed}, {"trees", a.trees}},
              {{"cue", std::string(to_string(cue))},
               {"samples", model.n_samples},
               {"positives", model.n_positive},
               {"degenerate", model.degenerate},
               {"importances", weights}});
}

struct PredictArgs {
  std::string model;
  std::string hyp;
  std::string out;
  std::vector<std::string> sequences;
};

void run_predict(const PredictArgs& a) {
  const ForestModel model =
      parse_file(a.model, [](std::istream& in) { return read_model(in); });
  RecordsBySequence recs = read_hyp_dir(a.hyp, selection(a.sequences));
  const Cue cue = single_cue(recs, a.hyp);
  if (cue != model.cue) {
    throw DataError("model " + a.model + " was trained for the " +
                    std::string(to_string(model.cue)) +
                    " cue but the hypotheses in " + a.hyp + " come from the " +
                    std::string(to_string(cue)) + " cue");
  }
  for (auto& [id, v] : recs) {
    score_records(model, v);
    write_records(a.out, id, v);
  }
  write_stage(a.out, "predict",
              {{"model", a.model}, {"hyp", a.hyp}, {"out", a.out},
               {"sequences", a.sequences}},
              {{"cue", std::string(to_string(cue))},
               {"sequences", recs.size()},
               {"scored", count(recs)}});
}

struct FuseArgs {
  std::string temporal;
  std::string stereo;
  std::string out;
  double threshold = 0.5;
  double overlap = 0.7;
};

void run_fuse(const FuseArgs& a) {
  const RecordsBySequence t = read_hyp_dir(a.temporal);
  const RecordsBySequence s = read_hyp_dir(a.stereo);
  std::set<std::string> ids;
  for (const auto& [id, v] : t) ids.insert(id);
  for (const auto& [id, v] : s) ids.insert(id);
  FusionStats stats;
  for (const std::string& id : ids) {
    auto errors = [&](const RecordsBySequence& r) {
      const auto it = r.find(id);
      if (it == r.end()) return DetectionsByFrame{};
      for (const HypothesisRecord& rec : it->second) {
        if (!rec.score) throw DataError("fuse needs scored hypotheses (sequence " + id + ")");
      }
      return predicted_errors(it->second, a.threshold);
    };
    const FusionResult fused = fuse_cues(errors(t), errors(s), a.overlap);
    stats += fused.stats;
    DetectionsByFrame by_frame;
    for (const ScoredBox& b : fused.fused) by_frame[b.frame].push_back(b);
    write_file(fs::path(a.out) / id / kErrorsFile,
               [&](std::ostream& o) { write_detections(o, by_frame); });
  }
  write_stage(a.out, "fuse",
              {{"temporal", a.temporal}, {"stereo", a.stereo}, {"out", a.out},
               {"threshold", a.threshold}, {"overlap", a.overlap}},
              {{"temporal_total", stats.temporal_total},
               {"stereo_total", stats.stereo_total},
               {"intersection", stats.intersection},
               {"temporal_unique", stats.temporal_unique},
               {"stereo_unique", stats.stereo_unique},
               {"fused_total", stats.fused_total}});
}

struct EvalArgs {
  std::string data;
  std::string hyp;
  std::string errors;
  std::string out;
  double threshold = 0.5;
  double conf = 0.5;
  double min_iou = 0.5;
};

DetectionsByFrame read_errors(const fs::path& dir, const std::string& id) {
  const fs::path p = dir / id / kErrorsFile;
  if (!fs::exists(p)) return {};
  return parse_file(p, [](std::istream& in) { return parse_detections(in); });
}

void run_eval(const EvalArgs& a) {
  RecordsBySequence recs = read_hyp_dir(a.hyp);
  const auto data = load_labeled(a.data, recs, "eval");
  LabelingParams lp;
  lp.conf_threshold = a.conf;
  lp.min_iou = a.min_iou;
  DetectionEvalParams ep;
  ep.conf_threshold = a.conf;
  ep.min_iou = a.min_iou;

  std::vector<HypothesisRecord> all;
  F1Result f1;
  for (auto& [id, v] : recs) {
    const LoadedSequence& s = find_sequence(data, id);
    for (const HypothesisRecord& r : v) {
      if (!r.score) throw DataError("eval needs scored hypotheses (sequence " + id + ")");
    }
    // Labels always come from the ground truth, never from the input table.
    auto labeled = label_hypotheses(v, s.data.left_detections, s.data.ground_truth, lp);
    const DetectionsByFrame errors = a.errors.empty()
                                         ? predicted_errors(labeled, a.threshold)
                                         : read_errors(a.errors, id);
    f1 += f1_with_corrections(s.data.left_detections, errors, s.data.ground_truth, ep);
    all.insert(all.end(), labeled.begin(), labeled.end());
  }
  const Cue cue = single_cue(recs, a.hyp);
  const ApResult ap = average_precision(scored_items(all));
  const ApResult naive = naive_baseline(all);

  std::string pr = "recall,precision,threshold\n";
  for (const PrPoint& p : ap.pr_points) {
    pr += format_double(p.recall) + "," + format_double(p.precision) + "," +
          format_double(p.threshold) + "\n";
  }
  write_text_file(fs::path(a.out) / "pr.csv", pr);
  const json summary{{"cue", std::string(to_string(cue))},
                     {"classifier", ap_json(ap)},
                     {"naive_baseline", ap_json(naive)},
                     {"ap_gain", ap.ap - naive.ap},
                     {"f1_before", counts_json(f1.before)},
                     {"f1_after", counts_json(f1.after)}};
  write_text_file(fs::path(a.out) / "summary.json", summary.dump(2) + "\n");
  write_stage(a.out, "eval",
              {{"data", a.data}, {"hyp", a.hyp}, {"errors", a.errors},
               {"out", a.out}, {"threshold", a.threshold},
               {"conf_threshold", a.conf}, {"min_iou", a.min_iou}},
              summary);
}

struct GeomapArgs {
  std::string data;
  std::string errors;
  std::string out;
  double bin = 10.0;
};

void run_geomap(const GeomapArgs& a) {
  const auto data = load_data(a.data);
  GeoGrid grid;
  grid.bin_size_m = a.bin;
  std::size_t total = 0;
  for (const LoadedSequence& s : data) {
    const auto per_frame = errors_per_frame(read_errors(a.errors, s.data.sequence_id));
    for (const auto& [f, n] : per_frame) total += static_cast<std::size_t>(n);
    grid.merge(bin_errors(s.data.poses, per_frame, a.bin));
  }
  if (grid.bins.empty()) throw DataError(a.data + ": no poses to bin");
  const Heatmap map = export_heatmap(grid);
  write_text_file(fs::path(a.out) / "heatmap.csv", map.csv);
  write_file(fs::path(a.out) / "heatmap.pgm", [&](std::ostream& o) {
    write_pgm8(o, map.width, map.height, map.pixels);
  });
  write_stage(a.out, "geomap",
              {{"data", a.data}, {"errors", a.errors}, {"out", a.out}, {"bin_m", a.bin}},
              {{"cells", grid.bins.size()},
               {"errors", total},
               {"width", map.width},
               {"height", map.height}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine missed detections from temporal and stereo cues"};
  app.require_subcommand(1);
  const auto unit = CLI::Range(0.0, 1.0);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate synthetic sequences");
  c_synth->add_option("--out", synth.out, "Output root")->required();
  c_synth->add_option("--seed", synth.cfg.seed);
  c_synth->add_option("--sequences", synth.cfg.n_sequences)->check(CLI::PositiveNumber);
  c_synth->add_option("--frames", synth.cfg.frames_per_sequence)->check(CLI::PositiveNumber);
  c_synth->add_option("--width", synth.cfg.image_width)->check(CLI::PositiveNumber);
  c_synth->add_option("--height", synth.cfg.image_height)->check(CLI::PositiveNumber);
  c_synth->add_option("--min-objects", synth.cfg.min_objects)->check(CLI::NonNegativeNumber);
  c_synth->add_option("--max-objects", synth.cfg.max_objects)->check(CLI::NonNegativeNumber);
  c_synth->add_option("--miss-prob", synth.cfg.miss_probability)->check(unit);
  c_synth->add_option("--fp-rate", synth.cfg.fp_rate)->check(unit);
  c_synth->add_option("--confidence-noise", synth.cfg.confidence_noise)->check(CLI::Range(0.0, 0.5));
  c_synth->add_option("--jitter", synth.cfg.box_jitter_px, "Box jitter std dev, px")
      ->check(CLI::NonNegativeNumber);
  c_synth->add_option("--disparity-error-prob", synth.cfg.disparity_error_probability)->check(unit);
  c_synth->add_option("--speckle", synth.cfg.speckle_fraction)->check(CLI::Range(0.0, 0.99));
  c_synth->add_flag("!--shared-misses", synth.cfg.stereo_independent,
                    "Right camera misses exactly what the left misses");

  HypArgs hyp_t, hyp_s;
  auto* c_ht = app.add_subcommand("hypothesize-temporal", "Unmatched tracklet boxes");
  auto* c_hs = app.add_subcommand("hypothesize-stereo", "Unmatched disparity-shifted right detections");
  for (auto [cmd, args] : {std::pair{c_ht, &hyp_t}, std::pair{c_hs, &hyp_s}}) {
    cmd->add_option("--data", args->data, "Sequence root")->required();
    cmd->add_option("--out", args->out, "Hypotheses directory")->required();
    cmd->add_option("--conf", args->conf, "Detector confidence threshold")->check(unit);
    cmd->add_option("--sequences", args->sequences)->delimiter(',');
  }

  FeaturizeArgs feat;
  auto* c_feat = app.add_subcommand("featurize", "Compute hypothesis features");
  c_feat->add_option("--data", feat.data)->required();
  c_feat->add_option("--hyp", feat.hyp)->required();
  c_feat->add_option("--out", feat.out)->required();

  LabelArgs label;
  auto* c_label = app.add_subcommand("label", "Label hypotheses from ground truth");
  c_label->add_option("--data", label.data)->required();
  c_label->add_option("--hyp", label.hyp)->required();
  c_label->add_option("--out", label.out)->required();
  c_label->add_option("--conf", label.conf)->check(unit);
  c_label->add_option("--min-iou", label.min_iou)->check(unit);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train a per-cue random forest");
  c_train->add_option("--hyp", train.hyp, "Labeled hypotheses")->required();
  c_train->add_option("--out", train.out, "Model file")->required();
  c_train->add_option("--sequences", train.sequences)->delimiter(',');
  c_train->add_option("--seed", train.seed);
  c_train->add_option("--trees", train.trees)->check(CLI::PositiveNumber);

  PredictArgs predict;
  auto* c_pred = app.add_subcommand("predict", "Score hypotheses with a model");
  c_pred->add_option("--model", predict.model)->required();
  c_pred->add_option("--hyp", predict.hyp)->required();
  c_pred->add_option("--out", predict.out)->required();
  c_pred->add_option("--sequences", predict.sequences)->delimiter(',');

  FuseArgs fuse;
  auto* c_fuse = app.add_subcommand("fuse", "Merge predicted errors of both cues");
  c_fuse->add_option("--temporal", fuse.temporal)->required();
  c_fuse->add_option("--stereo", fuse.stereo)->required();
  c_fuse->add_option("--out", fuse.out)->required();
  c_fuse->add_option("--threshold", fuse.threshold, "Classifier operating point")->check(unit);
  c_fuse->add_option("--overlap", fuse.overlap, "NMS overlap")->check(unit);

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "AP against naive baseline, detector F1");
  c_eval->add_option("--data", eval.data)->required();
  c_eval->add_option("--hyp", eval.hyp, "Scored hypotheses")->required();
  c_eval->add_option("--errors", eval.errors, "Fused errors (default: hypotheses above threshold)");
  c_eval->add_option("--out", eval.out)->required();
  c_eval->add_option("--threshold", eval.threshold)->check(unit);
  c_eval->add_option("--conf", eval.conf)->check(unit);
  c_eval->add_option("--min-iou", eval.min_iou)->check(unit);

  GeomapArgs geo;
  auto* c_geo = app.add_subcommand("geomap", "Bin mined errors by ego pose");
  c_geo->add_option("--data", geo.data)->required();
  c_geo->add_option("--errors", geo.errors, "Output of fuse")->required();
  c_geo->add_option("--out", geo.out)->required();
  c_geo->add_option("--bin", geo.bin, "Cell size, m")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*c_synth) {
      try {
        validate(synth.cfg);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
      run_synth(synth);
    } else if (*c_ht) {
      run_hypothesize(hyp_t, Cue::Temporal);
    } else if (*c_hs) {
      run_hypothesize(hyp_s, Cue::Stereo);
    } else if (*c_feat) {
      run_featurize(feat);
    } else if (*c_label) {
      run_label(label);
    } else if (*c_train) {
      run_train(train);
    } else if (*c_pred) {
      run_predict(predict);
    } else if (*c_fuse) {
      run_fuse(fuse);
    } else if (*c_eval) {
      run_eval(eval);
    } else if (*c_geo) {
      run_geomap(geo);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
