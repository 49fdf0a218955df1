#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fnmine/geometry.hpp"
#include "fnmine/hypothesis.hpp"

namespace fnmine {

// Dense disparity in 1/256 pixel fixed point; raw value 0 marks an invalid
// pixel. The map is referenced to the right image: a right-image pixel at
// column u corresponds to left-image column u + d.
class DisparityMap {
 public:
  static constexpr double kScale = 256.0;

  DisparityMap() = default;
  DisparityMap(int width, int height, std::uint16_t fill = 0);
  DisparityMap(int width, int height, std::vector<std::uint16_t> raw);

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint16_t raw(int u, int v) const { return raw_[index(u, v)]; }
  void set_raw(int u, int v, std::uint16_t value) { raw_[index(u, v)] = value; }
  bool valid(int u, int v) const { return raw(u, v) != 0; }
  double disparity(int u, int v) const { return raw(u, v) / kScale; }
  // Stores round(d * 256); d <= 0 or non-finite stores invalid.
  void set_disparity(int u, int v, double d);

  std::span<const std::uint16_t> data() const { return raw_; }

  friend bool operator==(const DisparityMap&, const DisparityMap&) = default;

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(u);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint16_t> raw_;
};

// Column reversal u -> W-1-u.
DisparityMap mirror(const DisparityMap& map);

inline constexpr double kDefaultMinValidFraction = 0.25;

// Median disparity over valid pixels of the box region clipped to the image.
// The region covers pixel columns floor(x1)..ceil(x2)-1 and the same for rows.
// Empty when fewer than min_valid_fraction of the region's pixels are valid.
// Throws GeometryError when the region misses the image entirely.
std::optional<double> median_disparity(
    const DisparityMap& map, const BBox& region,
    double min_valid_fraction = kDefaultMinValidFraction);

struct ShiftedBox {
  ScoredBox box;
  // Index into the right-camera detection list given to shift_detections.
  int source_index = 0;

  friend bool operator==(const ShiftedBox&, const ShiftedBox&) = default;
};

struct ShiftResult {
  std::vector<ShiftedBox> boxes;
  std::size_t dropped = 0;
};

// +1: left_x = right_x + d (map referenced to the right image).
// -1: the mirrored convention used when mining the other camera.
enum class ShiftSign : int { Positive = 1, Negative = -1 };

// Moves right-camera detections into the left frame by their region's median
// disparity. Detections under conf_threshold are skipped; detections whose
// median is unavailable or whose shifted box leaves the image are dropped and
// counted.
ShiftResult shift_detections(
    std::span<const ScoredBox> right_detections, const DisparityMap& map,
    double conf_threshold, ShiftSign sign = ShiftSign::Positive,
    double min_valid_fraction = kDefaultMinValidFraction);

// Shifted boxes that no left detection explains at IoU >= min_iou. Hypothesis
// confidence is the originating right detection's confidence.
std::vector<Hypothesis> generate_stereo_hypotheses(
    std::span<const ShiftedBox> shifted,
    std::span<const ScoredBox> left_detections, double conf_threshold,
    double min_iou = 0.5);

}  // namespace fnmine
