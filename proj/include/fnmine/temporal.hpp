#pragma once

#include <map>
#include <span>
#include <vector>

#include "fnmine/geometry.hpp"
#include "fnmine/hypothesis.hpp"

namespace fnmine {

// A tracker output box at one frame. `length` counts every frame the track
// has existed up to and including this one, coasted frames included.
struct Tracklet {
  int track_id = 0;
  ScoredBox box;
  int length = 1;

  friend bool operator==(const Tracklet&, const Tracklet&) = default;
};

using TrackletsByFrame = std::map<int, std::vector<Tracklet>>;
using DetectionsByFrame = std::map<int, std::vector<ScoredBox>>;

// Tracklets at a frame that no detection explains: the unmatched-tracklet side
// of match_boxes(tracklets, detections, 0.5). Detections below
// conf_threshold are ignored.
std::vector<Hypothesis> generate_temporal_hypotheses(
    std::span<const Tracklet> tracklets, std::span<const ScoredBox> detections,
    double conf_threshold, double min_iou = 0.5);

struct TrackerParams {
  double iou_gate = 0.3;
  int max_coast = 5;
  double coast_decay = 0.9;
};

// Greedy IoU tracker with constant-velocity coasting. Stands in for an
// external multi-object tracker so synthetic runs are self-contained. One
// instance per sequence.
class BaselineTracker {
 public:
  BaselineTracker(double image_width, double image_height,
                  TrackerParams params = {});

  // Advances to `frame` and returns every live track's box there, including
  // coasted predictions. Frames must be strictly increasing.
  std::vector<Tracklet> step(int frame, std::span<const ScoredBox> detections);

 private:
  struct Track {
    int id = 0;
    BBox box;
    double vx = 0.0;
    double vy = 0.0;
    double last_confidence = 0.0;
    Category category = Category::Car;
    int length = 0;
    int coasted = 0;
    int last_seen_frame = 0;
  };

  BBox predict(const Track& t, int frame) const;

  double width_;
  double height_;
  TrackerParams params_;
  std::vector<Track> tracks_;
  int next_id_ = 0;
  int last_frame_ = -1;
};

// Runs BaselineTracker over all frames in order. Detections should already be
// confidence-filtered.
TrackletsByFrame baseline_track(const DetectionsByFrame& detections,
                                std::span<const int> frames,
                                double image_width, double image_height,
                                TrackerParams params = {});

}  // namespace fnmine
