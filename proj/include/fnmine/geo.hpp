#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fnmine/dataset.hpp"

namespace fnmine {

struct GeoCell {
  std::int64_t error_count = 0;
  std::int64_t frame_count = 0;

  double rate() const {
    return frame_count > 0 ? static_cast<double>(error_count) /
                                 static_cast<double>(frame_count)
                           : 0.0;
  }
  friend bool operator==(const GeoCell&, const GeoCell&) = default;
};

// Square planar cells keyed by (floor(x / size), floor(y / size)).
struct GeoGrid {
  double bin_size_m = 10.0;
  std::map<std::pair<std::int64_t, std::int64_t>, GeoCell> bins;

  // Adds another grid with the same bin size.
  void merge(const GeoGrid& other);
};

// Attributes each posed frame's error count to its cell. Frames without a
// pose are skipped; posed frames without errors still add to frame_count.
// Throws std::invalid_argument for bin_size_m <= 0.
GeoGrid bin_errors(std::span<const PoseRecord> poses,
                   const std::map<int, int>& errors_per_frame,
                   double bin_size_m);

struct Heatmap {
  // Header "cell_x_m,cell_y_m,frames,errors,rate"; cell_x_m/cell_y_m are the
  // cell's lower corner. Rows sorted by cell index.
  std::string csv;
  // One pixel per cell over the cells' bounding rectangle, north (larger y)
  // at the top. Value = round_half_up(255 * rate / max_rate); cells without
  // frames are 0.
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;
};

// Throws std::invalid_argument for an empty grid.
Heatmap export_heatmap(const GeoGrid& grid);

}  // namespace fnmine
