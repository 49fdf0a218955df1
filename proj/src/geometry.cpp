#include "fnmine/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

namespace fnmine {

namespace {

constexpr std::array<std::pair<Category, std::string_view>, 9> kCategoryNames{{
    {Category::Car, "Car"},
    {Category::Van, "Van"},
    {Category::Truck, "Truck"},
    {Category::Pedestrian, "Pedestrian"},
    {Category::PersonSitting, "Person_sitting"},
    {Category::Cyclist, "Cyclist"},
    {Category::Tram, "Tram"},
    {Category::Misc, "Misc"},
    {Category::DontCare, "DontCare"},
}};

bool higher_priority(const ScoredBox& a, const ScoredBox& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.frame != b.frame) return a.frame < b.frame;
  return a.box < b.box;
}

}  // namespace

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
         std::isfinite(y2) && x2 > x1 && y2 > y1;
}

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "Misc";
}

Category category_from_string(std::string_view name) {
  for (const auto& [cat, n] : kCategoryNames) {
    if (n == name) return cat;
  }
  throw std::invalid_argument("unknown object category '" + std::string(name) +
                              "'");
}

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  if (iw <= 0.0) return 0.0;
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

BBox clip(const BBox& box, double image_width, double image_height) {
  return {std::clamp(box.x1, 0.0, image_width),
          std::clamp(box.y1, 0.0, image_height),
          std::clamp(box.x2, 0.0, image_width),
          std::clamp(box.y2, 0.0, image_height)};
}

BBox mirror(const BBox& box, double image_width) {
  return {image_width - box.x2, box.y1, image_width - box.x1, box.y2};
}

NormalizedBox normalize(const BBox& box, double image_width,
                        double image_height) {
  if (!(image_width > 0.0) || !(image_height > 0.0)) {
    throw GeometryError("image dimensions must be positive");
  }
  const BBox c = clip(box, image_width, image_height);
  if (!(c.x2 > c.x1) || !(c.y2 > c.y1)) {
    throw GeometryError("box lies outside the image");
  }
  // Each term is a single ratio of input quantities so uniform scaling of
  // exactly representable inputs gives bit-identical results.
  const double left = c.x1 / image_width;
  const double right = c.x2 / image_width;
  const double top = c.y1 / image_height;
  const double bottom = c.y2 / image_height;
  return {0.5 * (left + right) - 0.5, 0.5 * (top + bottom) - 0.5,
          (c.x2 - c.x1) / image_width, (c.y2 - c.y1) / image_height};
}

std::vector<ScoredBox> nms(std::span<const ScoredBox> boxes,
                           double min_overlap) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_priority(boxes[a], boxes[b]);
  });

  std::vector<ScoredBox> kept;
  for (std::size_t idx : order) {
    const ScoredBox& cand = boxes[idx];
    const bool suppressed = std::any_of(
        kept.begin(), kept.end(), [&](const ScoredBox& k) {
          return iou(k.box, cand.box) >= min_overlap;
        });
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

std::vector<ScoredBox> height_filter(std::span<const ScoredBox> boxes,
                                     double min_height) {
  std::vector<ScoredBox> out;
  std::copy_if(boxes.begin(), boxes.end(), std::back_inserter(out),
               [&](const ScoredBox& b) { return b.box.height() >= min_height; });
  return out;
}

std::vector<ScoredBox> confidence_filter(std::span<const ScoredBox> boxes,
                                         double min_confidence) {
  std::vector<ScoredBox> out;
  std::copy_if(boxes.begin(), boxes.end(), std::back_inserter(out),
               [&](const ScoredBox& b) {
                 return b.confidence >= min_confidence;
               });
  return out;
}

}  // namespace fnmine
