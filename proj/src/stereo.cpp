#include "fnmine/stereo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnmine/assignment.hpp"
#include "fnmine/features.hpp"

namespace fnmine {

DisparityMap::DisparityMap(int width, int height, std::uint16_t fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("disparity map dimensions must be >= 0");
  }
  raw_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              fill);
}

DisparityMap::DisparityMap(int width, int height, std::vector<std::uint16_t> raw)
    : width_(width), height_(height), raw_(std::move(raw)) {
  if (width < 0 || height < 0 ||
      raw_.size() != static_cast<std::size_t>(width) *
                         static_cast<std::size_t>(height)) {
    throw std::invalid_argument("disparity payload does not match dimensions");
  }
}

void DisparityMap::set_disparity(int u, int v, double d) {
  if (!std::isfinite(d) || d <= 0.0) {
    set_raw(u, v, 0);
    return;
  }
  const double scaled = std::round(d * kScale);
  set_raw(u, v, static_cast<std::uint16_t>(std::clamp(scaled, 1.0, 65535.0)));
}

DisparityMap mirror(const DisparityMap& map) {
  DisparityMap out(map.width(), map.height());
  for (int v = 0; v < map.height(); ++v) {
    for (int u = 0; u < map.width(); ++u) {
      out.set_raw(map.width() - 1 - u, v, map.raw(u, v));
    }
  }
  return out;
}

std::optional<double> median_disparity(const DisparityMap& map,
                                       const BBox& region,
                                       double min_valid_fraction) {
  const int u0 = std::max(0, static_cast<int>(std::floor(region.x1)));
  const int v0 = std::max(0, static_cast<int>(std::floor(region.y1)));
  const int u1 = std::min(map.width(), static_cast<int>(std::ceil(region.x2)));
  const int v1 = std::min(map.height(), static_cast<int>(std::ceil(region.y2)));
  if (u1 <= u0 || v1 <= v0) {
    throw GeometryError("disparity region lies outside the image");
  }

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(u1 - u0) *
                 static_cast<std::size_t>(v1 - v0));
  for (int v = v0; v < v1; ++v) {
    for (int u = u0; u < u1; ++u) {
      const std::uint16_t raw = map.raw(u, v);
      if (raw != 0) values.push_back(static_cast<double>(raw));
    }
  }
  const double total = static_cast<double>(u1 - u0) * (v1 - v0);
  if (values.empty() ||
      static_cast<double>(values.size()) < min_valid_fraction * total) {
    return std::nullopt;
  }
  return median(std::move(values)) / DisparityMap::kScale;
}

ShiftResult shift_detections(std::span<const ScoredBox> right_detections,
                             const DisparityMap& map, double conf_threshold,
                             ShiftSign sign, double min_valid_fraction) {
  ShiftResult result;
  const double s = static_cast<double>(static_cast<int>(sign));
  for (std::size_t i = 0; i < right_detections.size(); ++i) {
    const ScoredBox& det = right_detections[i];
    if (det.confidence < conf_threshold) continue;
    std::optional<double> d;
    try {
      d = median_disparity(map, det.box, min_valid_fraction);
    } catch (const GeometryError&) {
      d.reset();
    }
    if (!d) {
      ++result.dropped;
      continue;
    }
    ScoredBox moved = det;
    moved.box.x1 += s * *d;
    moved.box.x2 += s * *d;
    if (moved.box.x2 <= 0.0 || moved.box.x1 >= map.width()) {
      ++result.dropped;
      continue;
    }
    result.boxes.push_back({moved, static_cast<int>(i)});
  }
  return result;
}

std::vector<Hypothesis> generate_stereo_hypotheses(
    std::span<const ShiftedBox> shifted,
    std::span<const ScoredBox> left_detections, double conf_threshold,
    double min_iou) {
  std::vector<BBox> shifted_boxes, left_boxes;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    if (shifted[i].box.confidence >= conf_threshold) {
      shifted_boxes.push_back(shifted[i].box.box);
      kept.push_back(i);
    }
  }
  for (const ScoredBox& d : left_detections) {
    if (d.confidence >= conf_threshold) left_boxes.push_back(d.box);
  }

  const MatchResult m = match_boxes(shifted_boxes, left_boxes, min_iou);
  std::vector<Hypothesis> out;
  for (std::size_t k : m.unmatched_a) {
    const ShiftedBox& sb = shifted[kept[k]];
    out.push_back({sb.box.box, sb.box.confidence, Cue::Stereo, sb.box.frame, 0,
                   sb.source_index});
  }
  return out;
}

}  // namespace fnmine
