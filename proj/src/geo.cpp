#include "fnmine/geo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fnmine/io.hpp"

namespace fnmine {

void GeoGrid::merge(const GeoGrid& other) {
  if (other.bin_size_m != bin_size_m) {
    throw std::invalid_argument("cannot merge grids with different bin sizes");
  }
  for (const auto& [key, cell] : other.bins) {
    GeoCell& c = bins[key];
    c.error_count += cell.error_count;
    c.frame_count += cell.frame_count;
  }
}

GeoGrid bin_errors(std::span<const PoseRecord> poses,
                   const std::map<int, int>& errors_per_frame,
                   double bin_size_m) {
  if (!(bin_size_m > 0.0) || !std::isfinite(bin_size_m)) {
    throw std::invalid_argument("bin size must be positive");
  }
  GeoGrid grid;
  grid.bin_size_m = bin_size_m;
  for (const PoseRecord& p : poses) {
    const auto i = static_cast<std::int64_t>(std::floor(p.x_m / bin_size_m));
    const auto j = static_cast<std::int64_t>(std::floor(p.y_m / bin_size_m));
    GeoCell& cell = grid.bins[{i, j}];
    cell.frame_count += 1;
    const auto it = errors_per_frame.find(p.frame);
    if (it != errors_per_frame.end()) cell.error_count += it->second;
  }
  return grid;
}

Heatmap export_heatmap(const GeoGrid& grid) {
  if (grid.bins.empty()) throw std::invalid_argument("empty geo grid");

  Heatmap out;
  std::ostringstream csv;
  csv << "cell_x_m,cell_y_m,frames,errors,rate\n";
  std::int64_t min_i = grid.bins.begin()->first.first, max_i = min_i;
  std::int64_t min_j = grid.bins.begin()->first.second, max_j = min_j;
  double max_rate = 0.0;
  for (const auto& [key, cell] : grid.bins) {
    csv << format_double(static_cast<double>(key.first) * grid.bin_size_m) << ','
        << format_double(static_cast<double>(key.second) * grid.bin_size_m)
        << ',' << cell.frame_count << ',' << cell.error_count << ','
        << format_double(cell.rate()) << '\n';
    min_i = std::min(min_i, key.first);
    max_i = std::max(max_i, key.first);
    min_j = std::min(min_j, key.second);
    max_j = std::max(max_j, key.second);
    max_rate = std::max(max_rate, cell.rate());
  }
  out.csv = csv.str();

  out.width = static_cast<int>(max_i - min_i + 1);
  out.height = static_cast<int>(max_j - min_j + 1);
  out.pixels.assign(static_cast<std::size_t>(out.width) *
                        static_cast<std::size_t>(out.height),
                    0);
  if (max_rate <= 0.0) return out;
  for (const auto& [key, cell] : grid.bins) {
    const auto col = static_cast<std::size_t>(key.first - min_i);
    const auto row = static_cast<std::size_t>(max_j - key.second);
    const double scaled = std::floor(255.0 * cell.rate() / max_rate + 0.5);
    out.pixels[row * static_cast<std::size_t>(out.width) + col] =
        static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
  }
  return out;
}

}  // namespace fnmine
