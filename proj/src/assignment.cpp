#include "fnmine/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fnmine {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("cost matrix data size does not match shape");
  }
}

Assignment hungarian(const CostMatrix& cost) {
  Assignment result;
  if (cost.empty()) return result;

  const std::size_t n = std::max(cost.rows(), cost.cols());
  constexpr double kPad = 1.0;
  auto at = [&](std::size_t r, std::size_t c) {
    return (r < cost.rows() && c < cost.cols()) ? cost(r, c) : kPad;
  };

  // 1-based potentials formulation; column 0 is the virtual source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> col_owner(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = col_owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(row0 - 1, j - 1) - u[row0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      col_owner[col0] = col_owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[col_owner[j] - 1] = j - 1;
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    const std::size_t c = row_to_col[r];
    if (c < cost.cols()) {
      result.pairs.emplace_back(r, c);
      result.total_cost += cost(r, c);
    }
  }
  return result;
}

MatchResult match_boxes(std::span<const BBox> set_a,
                        std::span<const BBox> set_b, double min_iou) {
  MatchResult result;
  std::vector<char> a_taken(set_a.size(), 0), b_taken(set_b.size(), 0);

  if (!set_a.empty() && !set_b.empty()) {
    CostMatrix cost(set_a.size(), set_b.size());
    CostMatrix overlap(set_a.size(), set_b.size());
    for (std::size_t i = 0; i < set_a.size(); ++i) {
      for (std::size_t j = 0; j < set_b.size(); ++j) {
        overlap(i, j) = iou(set_a[i], set_b[j]);
        cost(i, j) = 1.0 - overlap(i, j);
      }
    }
    for (const auto& [i, j] : hungarian(cost).pairs) {
      if (overlap(i, j) >= min_iou) {
        result.pairs.push_back({i, j, overlap(i, j)});
        a_taken[i] = 1;
        b_taken[j] = 1;
      }
    }
  }

  for (std::size_t i = 0; i < set_a.size(); ++i) {
    if (!a_taken[i]) result.unmatched_a.push_back(i);
  }
  for (std::size_t j = 0; j < set_b.size(); ++j) {
    if (!b_taken[j]) result.unmatched_b.push_back(j);
  }
  return result;
}

}  // namespace fnmine
