#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fnmine/geometry.hpp"

namespace fnmine {

inline constexpr std::size_t kFeatureCount = 12;
// Stereo hypotheses carry no track length; their models use the first 11.
inline constexpr std::size_t kStereoFeatureCount = 11;

// Frozen column order shared by the hypotheses table, training and
// prediction.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "x",       "y",          "w",           "h",
    "r",       "det_cnt",    "med_det_ov",  "med_det_cnf",
    "hyp_cnt", "med_hyp_ov", "med_hyp_cnf", "n"};

struct FeatureVector {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double r = 0.0;
  double det_cnt = 0.0;
  double med_det_ov = 0.0;
  double med_det_cnf = 0.0;
  double hyp_cnt = 0.0;
  double med_hyp_ov = 0.0;
  double med_hyp_cnf = 0.0;
  double n = 0.0;

  std::array<double, kFeatureCount> to_array() const;
  static FeatureVector from_array(const std::array<double, kFeatureCount>& v);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct Hypothesis;

// Median with the even-count convention (mean of the middle pair); 0 for an
// empty input.
double median(std::vector<double> values);

// Describes the scene around a hypothesis. `cohort` holds the other tracklets
// (temporal) or other shifted detections (stereo) at the same frame and must
// not contain the hypothesis's own source. A box "overlaps" when IoU > 0.
FeatureVector featurize(const Hypothesis& h,
                        std::span<const ScoredBox> detections,
                        std::span<const ScoredBox> cohort, double image_width,
                        double image_height);

}  // namespace fnmine
