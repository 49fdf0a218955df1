#include "fnmine/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "fnmine/assignment.hpp"

namespace fnmine {

std::vector<Hypothesis> generate_temporal_hypotheses(
    std::span<const Tracklet> tracklets, std::span<const ScoredBox> detections,
    double conf_threshold, double min_iou) {
  std::vector<BBox> track_boxes, det_boxes;
  track_boxes.reserve(tracklets.size());
  for (const Tracklet& t : tracklets) track_boxes.push_back(t.box.box);
  for (const ScoredBox& d : detections) {
    if (d.confidence >= conf_threshold) det_boxes.push_back(d.box);
  }

  const MatchResult m = match_boxes(track_boxes, det_boxes, min_iou);
  std::vector<Hypothesis> out;
  out.reserve(m.unmatched_a.size());
  for (std::size_t i : m.unmatched_a) {
    const Tracklet& t = tracklets[i];
    out.push_back({t.box.box, t.box.confidence, Cue::Temporal, t.box.frame,
                   t.length, t.track_id});
  }
  return out;
}

BaselineTracker::BaselineTracker(double image_width, double image_height,
                                 TrackerParams params)
    : width_(image_width), height_(image_height), params_(params) {}

BBox BaselineTracker::predict(const Track& t, int frame) const {
  const double dt = static_cast<double>(frame - t.last_seen_frame);
  return {t.box.x1 + t.vx * dt, t.box.y1 + t.vy * dt, t.box.x2 + t.vx * dt,
          t.box.y2 + t.vy * dt};
}

std::vector<Tracklet> BaselineTracker::step(
    int frame, std::span<const ScoredBox> detections) {
  if (frame <= last_frame_) {
    throw std::invalid_argument("tracker frames must be strictly increasing");
  }
  last_frame_ = frame;

  std::vector<BBox> predicted;
  predicted.reserve(tracks_.size());
  for (const Track& t : tracks_) predicted.push_back(predict(t, frame));

  struct Candidate {
    double overlap;
    std::size_t track;
    std::size_t det;
  };
  std::vector<Candidate> candidates;
  for (std::size_t ti = 0; ti < tracks_.size(); ++ti) {
    for (std::size_t di = 0; di < detections.size(); ++di) {
      const double ov = iou(predicted[ti], detections[di].box);
      if (ov >= params_.iou_gate) candidates.push_back({ov, ti, di});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.overlap != b.overlap) return a.overlap > b.overlap;
              return std::tie(a.track, a.det) < std::tie(b.track, b.det);
            });

  std::vector<int> track_det(tracks_.size(), -1);
  std::vector<char> det_used(detections.size(), 0);
  for (const Candidate& c : candidates) {
    if (track_det[c.track] >= 0 || det_used[c.det]) continue;
    track_det[c.track] = static_cast<int>(c.det);
    det_used[c.det] = 1;
  }

  std::vector<Track> survivors;
  std::vector<Tracklet> out;
  for (std::size_t ti = 0; ti < tracks_.size(); ++ti) {
    Track t = tracks_[ti];
    t.length += 1;
    if (track_det[ti] >= 0) {
      const ScoredBox& d = detections[static_cast<std::size_t>(track_det[ti])];
      const double dt = static_cast<double>(frame - t.last_seen_frame);
      const double vx = (d.box.center_x() - t.box.center_x()) / dt;
      const double vy = (d.box.center_y() - t.box.center_y()) / dt;
      // Average with the previous estimate once one exists.
      const bool has_velocity = t.length > 2;
      t.vx = has_velocity ? 0.5 * (t.vx + vx) : vx;
      t.vy = has_velocity ? 0.5 * (t.vy + vy) : vy;
      t.box = d.box;
      t.last_confidence = d.confidence;
      t.category = d.category;
      t.coasted = 0;
      t.last_seen_frame = frame;
      out.push_back({t.id, {t.box, t.last_confidence, t.category, frame},
                     t.length});
      survivors.push_back(t);
      continue;
    }

    t.coasted += 1;
    if (t.coasted > params_.max_coast) continue;
    const BBox shown = clip(predicted[ti], width_, height_);
    if (!(shown.x2 > shown.x1) || !(shown.y2 > shown.y1)) continue;
    const double conf =
        t.last_confidence * std::pow(params_.coast_decay, t.coasted);
    out.push_back({t.id, {shown, conf, t.category, frame}, t.length});
    survivors.push_back(t);
  }

  for (std::size_t di = 0; di < detections.size(); ++di) {
    if (det_used[di]) continue;
    const ScoredBox& d = detections[di];
    Track t;
    t.id = next_id_++;
    t.box = d.box;
    t.last_confidence = d.confidence;
    t.category = d.category;
    t.length = 1;
    t.last_seen_frame = frame;
    out.push_back({t.id, {t.box, t.last_confidence, t.category, frame},
                   t.length});
    survivors.push_back(t);
  }

  tracks_ = std::move(survivors);
  return out;
}

TrackletsByFrame baseline_track(const DetectionsByFrame& detections,
                                std::span<const int> frames,
                                double image_width, double image_height,
                                TrackerParams params) {
  BaselineTracker tracker(image_width, image_height, params);
  TrackletsByFrame out;
  static const std::vector<ScoredBox> kNone;
  for (int frame : frames) {
    const auto it = detections.find(frame);
    const auto& dets = it == detections.end() ? kNone : it->second;
    auto tracks = tracker.step(frame, dets);
    if (!tracks.empty()) out[frame] = std::move(tracks);
  }
  return out;
}

}  // namespace fnmine
