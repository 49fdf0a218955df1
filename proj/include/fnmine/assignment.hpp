#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fnmine/geometry.hpp"

namespace fnmine {

// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  // (row, col) pairs sorted by row; min(rows, cols) entries.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_cost = 0.0;
};

// Minimum-cost assignment (Kuhn-Munkres with potentials, O(n^3)). Rectangular
// inputs are padded to square with cost 1.0; padded pairs are dropped. The
// total is summed over the returned pairs in row order.
Assignment hungarian(const CostMatrix& cost);

struct MatchPair {
  std::size_t a = 0;
  std::size_t b = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
};

// Optimal matching on cost 1 - IoU. Pairs whose IoU falls below min_iou are
// dissolved after solving and both members are reported unmatched.
MatchResult match_boxes(std::span<const BBox> set_a,
                        std::span<const BBox> set_b, double min_iou = 0.5);

}  // namespace fnmine
