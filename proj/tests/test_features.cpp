#include <doctest.h>

#include "fnmine/features.hpp"
#include "fnmine/hypothesis.hpp"
#include "random_data.hpp"

using namespace fnmine;

namespace {

Hypothesis hyp(BBox b, double conf, Cue cue = Cue::Temporal, int length = 4) {
  return {b, conf, cue, 0, length, 1};
}
ScoredBox box(BBox b, double conf) { return {b, conf, Category::Car, 0}; }

}  // namespace

TEST_CASE("median convention") {
  CHECK(median({}) == 0.0);
  CHECK(median({3}) == 3.0);
  CHECK(median({10, 20}) == 15.0);
  CHECK(median({5, 1, 3}) == 3.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
}

TEST_CASE("isolated hypothesis at the image center") {
  const FeatureVector f = featurize(hyp({400, 200, 600, 300}, 0.6), {}, {}, 1000, 500);
  CHECK(f == FeatureVector{0, 0, 0.2, 0.2, 0.6, 0, 0, 0, 0, 0, 0, 4});
}

TEST_CASE("overlap statistics use the even-count median") {
  // Hypothesis (0,0,10,10). IoU 0.6 with (0,0,10,6) and 0.4 with (0,0,10,4).
  const std::vector<ScoredBox> dets{box({0, 0, 10, 6}, 0.9), box({0, 0, 10, 4}, 0.7),
                                    box({50, 50, 60, 60}, 0.99)};
  const FeatureVector f = featurize(hyp({0, 0, 10, 10}, 0.5), dets, {}, 100, 100);
  CHECK(f.det_cnt == 2);
  CHECK(f.med_det_ov == doctest::Approx(0.5));
  CHECK(f.med_det_cnf == doctest::Approx(0.8));
  CHECK(f.hyp_cnt == 0);
}

TEST_CASE("cohort statistics") {
  const std::vector<ScoredBox> cohort{box({5, 0, 15, 10}, 0.4), box({0, 5, 10, 15}, 0.8),
                                      box({0, 0, 10, 10}, 0.6)};
  const FeatureVector f = featurize(hyp({0, 0, 10, 10}, 0.5), {}, cohort, 100, 100);
  CHECK(f.hyp_cnt == 3);
  CHECK(f.med_hyp_ov == doctest::Approx(1.0 / 3.0));
  CHECK(f.med_hyp_cnf == doctest::Approx(0.6));
}

TEST_CASE("stereo hypotheses have n = 0") {
  const FeatureVector f = featurize(hyp({0, 0, 10, 10}, 0.5, Cue::Stereo, 9), {}, {}, 100, 100);
  CHECK(f.n == 0);
}

TEST_CASE("feature vector layout") {
  const FeatureVector f{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto a = f.to_array();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == double(i + 1));
  CHECK(FeatureVector::from_array(a) == f);
  CHECK(kFeatureNames[0] == "x");
  CHECK(kFeatureNames[11] == "n");
}

TEST_CASE("featurize properties on random scenes") {
  testing::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const int w = testing::uni_int(rng, 50, 1200), h = testing::uni_int(rng, 50, 400);
    const Hypothesis hy = hyp(testing::random_int_box(rng, w, h), testing::uni(rng, 0, 1));
    std::vector<ScoredBox> dets, cohort;
    for (int k = testing::uni_int(rng, 0, 8); k > 0; --k)
      dets.push_back(box(testing::random_int_box(rng, w, h), testing::uni(rng, 0, 1)));
    for (int k = testing::uni_int(rng, 0, 8); k > 0; --k)
      cohort.push_back(box(testing::random_int_box(rng, w, h), testing::uni(rng, 0, 1)));
    const FeatureVector f = featurize(hy, dets, cohort, w, h);

    CHECK(f.det_cnt >= 0);
    CHECK(f.det_cnt <= double(dets.size()));
    CHECK(f.hyp_cnt <= double(cohort.size()));
    for (double v : {f.med_det_ov, f.med_det_cnf, f.med_hyp_ov, f.med_hyp_cnf}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }

    // Power-of-two scales keep areas and ratios exact.
    const double s = std::vector<double>{0.25, 0.5, 2, 4, 8}[testing::uni_int(rng, 0, 4)];
    auto scale = [s](BBox b) { return BBox{b.x1 * s, b.y1 * s, b.x2 * s, b.y2 * s}; };
    Hypothesis hs = hy;
    hs.box = scale(hy.box);
    auto ds = dets, cs = cohort;
    for (auto& d : ds) d.box = scale(d.box);
    for (auto& c : cs) c.box = scale(c.box);
    CHECK(featurize(hs, ds, cs, w * s, h * s) == f);

    // Adding a box that does not touch the hypothesis changes nothing.
    const BBox far{hy.box.x2 + 1, hy.box.y2 + 1, hy.box.x2 + 20, hy.box.y2 + 20};
    dets.push_back(box(far, 0.9));
    cohort.push_back(box(far, 0.9));
    CHECK(featurize(hy, dets, cohort, w, h) == f);
  }
}
