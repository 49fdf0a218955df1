#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fnmine {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Axis-aligned box in pixel coordinates, origin top-left. Boxes are half-open
// real intervals: area is (x2 - x1) * (y2 - y1) with no +1 pixel correction.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x1 + x2); }
  double center_y() const { return 0.5 * (y1 + y2); }
  bool valid() const;

  friend bool operator==(const BBox&, const BBox&) = default;
  friend auto operator<=>(const BBox&, const BBox&) = default;
};

// KITTI object types. Only Car is needed by the mining pipeline; the rest are
// kept so label files round-trip.
enum class Category {
  Car,
  Van,
  Truck,
  Pedestrian,
  PersonSitting,
  Cyclist,
  Tram,
  Misc,
  DontCare,
};

std::string_view to_string(Category c);
// Throws std::invalid_argument for unknown names.
Category category_from_string(std::string_view name);

struct ScoredBox {
  BBox box;
  double confidence = 1.0;
  Category category = Category::Car;
  int frame = 0;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

// Center offset from the image center and size, all as fractions of the
// image dimensions.
struct NormalizedBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const NormalizedBox&, const NormalizedBox&) = default;
};

double iou(const BBox& a, const BBox& b);

// Intersection of the box with [0,W) x [0,H); may be degenerate.
BBox clip(const BBox& box, double image_width, double image_height);

// Horizontal reflection x -> W - x.
BBox mirror(const BBox& box, double image_width);

// Clips to the image first. Throws GeometryError when the box lies fully
// outside the image or the dimensions are not positive.
NormalizedBox normalize(const BBox& box, double image_width,
                        double image_height);

// Greedy suppression in descending confidence. Ties are broken by frame, then
// by box coordinates, so the result does not depend on input order.
std::vector<ScoredBox> nms(std::span<const ScoredBox> boxes,
                           double min_overlap);

// Keeps boxes with height >= min_height.
std::vector<ScoredBox> height_filter(std::span<const ScoredBox> boxes,
                                     double min_height);

std::vector<ScoredBox> confidence_filter(std::span<const ScoredBox> boxes,
                                         double min_confidence);

}  // namespace fnmine
