#pragma once

// Random values for round-trip and property tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/forest.hpp"
#include "fnmine/hypothesis.hpp"
#include "fnmine/stereo.hpp"
#include "fnmine/temporal.hpp"

namespace fnmine::testing {

using Rng = std::mt19937_64;

inline double uni(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline int uni_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline BBox random_box(Rng& rng, double w = 1242.0, double h = 375.0) {
  const double x1 = uni(rng, -20.0, w);
  const double y1 = uni(rng, -20.0, h);
  return {x1, y1, x1 + uni(rng, 0.5, 300.0), y1 + uni(rng, 0.5, 200.0)};
}

// Integer-cornered box inside [0,w) x [0,h).
inline BBox random_int_box(Rng& rng, int w, int h) {
  const int x1 = uni_int(rng, 0, w - 2), y1 = uni_int(rng, 0, h - 2);
  return {double(x1), double(y1), double(uni_int(rng, x1 + 1, w)),
          double(uni_int(rng, y1 + 1, h))};
}

inline Category random_category(Rng& rng) {
  static const Category all[] = {Category::Car, Category::Van,
                                 Category::Truck, Category::Pedestrian,
                                 Category::PersonSitting, Category::Cyclist,
                                 Category::Tram, Category::Misc,
                                 Category::DontCare};
  return all[uni_int(rng, 0, std::size(all) - 1)];
}

inline std::vector<int> random_frames(Rng& rng, int max_count) {
  std::set<int> s;
  const int n = uni_int(rng, 0, max_count);
  for (int i = 0; i < n; ++i) s.insert(uni_int(rng, 0, 500));
  return {s.begin(), s.end()};
}

// Parses back identically with min_height 0 and no class collapsing.
inline GroundTruthByFrame random_labels(Rng& rng) {
  GroundTruthByFrame out;
  for (int f : random_frames(rng, 12)) {
    auto& v = out[f];
    for (int i = uni_int(rng, 1, 6); i > 0; --i) {
      GroundTruthObject o;
      o.frame = f;
      o.track_id = uni_int(rng, -1, 50);
      o.category = random_category(rng);
      o.box = random_box(rng);
      o.is_ignore = o.category == Category::DontCare;
      if (uni_int(rng, 0, 1)) o.score = uni(rng, 0.0, 1.0);
      v.push_back(o);
    }
  }
  return out;
}

inline DetectionsByFrame random_detections(Rng& rng) {
  DetectionsByFrame out;
  for (int f : random_frames(rng, 12)) {
    auto& v = out[f];
    for (int i = uni_int(rng, 1, 6); i > 0; --i) {
      Category c = random_category(rng);
      if (c == Category::DontCare) c = Category::Car;
      v.push_back({random_box(rng), uni(rng, 0.0, 1.0), c, f});
    }
  }
  return out;
}

// Lengths follow the running-count rule so parsing reproduces them.
inline TrackletsByFrame random_tracklets(Rng& rng) {
  TrackletsByFrame out;
  std::map<int, int> counts;
  for (int f : random_frames(rng, 12)) {
    std::set<int> ids;
    for (int i = uni_int(rng, 1, 6); i > 0; --i) ids.insert(uni_int(rng, 0, 8));
    auto& v = out[f];
    for (int id : ids) {
      v.push_back({id, {random_box(rng), uni(rng, 0.0, 1.0), Category::Car, f},
                   ++counts[id]});
    }
    std::shuffle(v.begin(), v.end(), rng);
  }
  return out;
}

inline DisparityMap random_disparity(Rng& rng) {
  const int w = uni_int(rng, 1, 40), h = uni_int(rng, 1, 30);
  std::vector<std::uint16_t> raw(static_cast<std::size_t>(w * h));
  for (auto& r : raw) {
    r = uni_int(rng, 0, 3) == 0 ? 0 : static_cast<std::uint16_t>(uni_int(rng, 0, 65535));
  }
  return DisparityMap(w, h, std::move(raw));
}

inline std::vector<PoseRecord> random_poses(Rng& rng) {
  std::vector<PoseRecord> out;
  for (int f : random_frames(rng, 20)) {
    out.push_back({f, uni(rng, -5000.0, 5000.0), uni(rng, -5000.0, 5000.0)});
  }
  return out;
}

inline TrainingSet random_training_set(Rng& rng, std::size_t features,
                                       std::size_t rows) {
  TrainingSet t;
  t.feature_count = features;
  std::vector<double> row(features);
  for (std::size_t i = 0; i < rows; ++i) {
    for (auto& v : row) v = uni_int(rng, 0, 3) == 0 ? double(uni_int(rng, 0, 4)) : uni(rng, 0.0, 1.0);
    const int label = (row[0] + row[1] > 1.0) != (uni_int(rng, 0, 9) == 0);
    t.add(row, label);
  }
  return t;
}

// r and n carry confidence and track length, as the table requires.
inline std::vector<HypothesisRecord> random_records(Rng& rng,
                                                    const std::string& seq) {
  std::vector<HypothesisRecord> out;
  for (int i = uni_int(rng, 0, 15); i > 0; --i) {
    HypothesisRecord r;
    r.sequence = seq;
    r.hyp.cue = uni_int(rng, 0, 1) ? Cue::Temporal : Cue::Stereo;
    r.hyp.frame = uni_int(rng, 0, 300);
    r.hyp.box = random_box(rng);
    r.hyp.confidence = uni(rng, 0.0, 1.0);
    r.hyp.track_length = r.hyp.cue == Cue::Temporal ? uni_int(rng, 1, 40) : 0;
    r.hyp.source_id = uni_int(rng, 0, 30);
    auto a = r.features.to_array();
    for (auto& v : a) v = uni(rng, 0.0, 1.0);
    a[5] = uni_int(rng, 0, 5);
    a[8] = uni_int(rng, 0, 5);
    r.features = FeatureVector::from_array(a);
    r.features.r = r.hyp.confidence;
    r.features.n = r.hyp.track_length;
    if (uni_int(rng, 0, 2)) r.label = uni_int(rng, 0, 1) ? Label::ValidError : Label::Invalid;
    if (uni_int(rng, 0, 2)) r.score = uni(rng, 0.0, 1.0);
    out.push_back(r);
  }
  return out;
}

}  // namespace fnmine::testing
