#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/hypothesis.hpp"
#include "fnmine/stereo.hpp"
#include "fnmine/temporal.hpp"

namespace fnmine {

// Rectangles on a blank world: objects sit on a flat ground plane, move with
// constant image velocity (plus a small random walk), and are seen by a
// rectified stereo pair. No pixels are rendered except disparity.
struct SynthConfig {
  std::uint64_t seed = 2018;
  int n_sequences = 20;
  int frames_per_sequence = 100;
  int image_width = 640;
  int image_height = 192;
  // Concurrent object slots per sequence, drawn uniformly.
  int min_objects = 3;
  int max_objects = 7;
  // Horizontal image velocity, px/frame.
  double min_speed = -4.0;
  double max_speed = 4.0;
  // Per-frame velocity random walk (std dev, px/frame).
  double velocity_jitter = 0.25;
  double min_depth_m = 8.0;
  double max_depth_m = 40.0;
  // Camera: focal length as a fraction of image width, stereo baseline and
  // mounting height. Disparity d = f * B / Z, rounded to whole pixels.
  double focal_fraction = 0.58;
  double baseline_m = 0.54;
  double camera_height_m = 1.65;
  double miss_probability = 0.2;
  // Per visible object per frame chance of a loose duplicate detection, and
  // per frame chance of a background false positive.
  double fp_rate = 0.05;
  // Detection confidence ~ U(1 - 2 * noise, 1).
  double confidence_noise = 0.1;
  // Detection box corner jitter (std dev, px).
  double box_jitter_px = 1.0;
  // Per object per frame chance that the disparity estimate over the object
  // is off by several pixels.
  double disparity_error_probability = 0.1;
  // Fraction of disparity pixels marked invalid.
  double speckle_fraction = 0.05;
  // When false the right camera misses exactly what the left camera misses.
  bool stereo_independent = true;
  // Detections below this do not feed the tracker.
  double track_conf_threshold = 0.5;
  TrackerParams tracker;
};

// Throws std::invalid_argument describing the first bad field.
void validate(const SynthConfig& config);

// Where one ground-truth object is in both images at one frame.
struct PlacedObject {
  int gt_id = 0;
  double depth_m = 0.0;
  // Whole-pixel true disparity; right box = left box - disparity.
  int disparity = 0;
  // Disparity written into the map over the object (differs when an
  // estimation error was planted).
  int painted_disparity = 0;
  BBox left_box;   // clipped to the image
  BBox right_box;  // clipped to the image
  bool truncated = false;
};

struct OracleMiss {
  int frame = 0;
  int gt_id = 0;
  BBox box;

  friend bool operator==(const OracleMiss&, const OracleMiss&) = default;
};

struct SynthSequence {
  SequenceDataset data;
  // Every object at every frame, ordered far to near.
  std::map<int, std::vector<PlacedObject>> placed;
  // Positive ground truth the left detector failed to report.
  std::vector<OracleMiss> oracle_misses;
  std::uint64_t seed = 0;
  SynthConfig config;
};

SynthSequence generate_sequence(const SynthConfig& config, int index);

// Right-referenced disparity for one frame; deterministic in (seed, frame).
DisparityMap render_disparity(const SynthSequence& seq, int frame);

// True when no nearer object's painted region intersects this object's right
// box and the object is not truncated in either image.
bool unoccluded(const SynthSequence& seq, int frame, int gt_id);

std::string sequence_name(int index);

struct OracleAgreement {
  std::size_t valid_checked = 0;
  std::size_t agreed = 0;
  // Records labeled valid with no oracle miss at IoU >= min_iou.
  std::vector<HypothesisRecord> disagreements;

  bool all_agree() const { return disagreements.empty(); }
  double agreement() const {
    return valid_checked == 0 ? 1.0
                              : static_cast<double>(agreed) /
                                    static_cast<double>(valid_checked);
  }
};

// Checks every valid-labeled record against the oracle miss list of its
// sequence and frame.
OracleAgreement oracle_label_check(
    std::span<const HypothesisRecord> labeled,
    const std::map<std::string, std::vector<OracleMiss>>& oracle,
    double min_iou = 0.5);

}  // namespace fnmine
