#include <doctest.h>

#include "fnmine/evaluation.hpp"
#include "random_data.hpp"

using namespace fnmine;

namespace {

ScoredItem item(double score, bool positive, int frame = 0) {
  return {score, positive, {"s", frame, {}}};
}

HypothesisRecord labeled(Label l) {
  HypothesisRecord r;
  r.label = l;
  return r;
}

ScoredBox det(BBox b, double conf = 0.9, int frame = 0) {
  return {b, conf, Category::Car, frame};
}

GroundTruthObject car(BBox b) {
  GroundTruthObject g;
  g.box = b;
  return g;
}

// Area under the all-point curve from an explicit ranking.
double oracle_ap(std::vector<ScoredItem> items) {
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.score > b.score; });
  double pos = 0;
  for (const auto& i : items) pos += i.positive;
  double tp = 0, ap = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!items[k].positive) continue;
    tp += 1;
    ap += (1.0 / pos) * (tp / double(k + 1));
  }
  return ap;
}

}  // namespace

TEST_CASE("average precision examples") {
  CHECK(average_precision({item(0.9, true), item(0.1, false)}).ap == 1.0);
  const ApResult r =
      average_precision({item(0.9, true), item(0.5, false), item(0.2, true)});
  CHECK(r.ap == doctest::Approx(5.0 / 6.0));
  CHECK(r.positives == 2);
  CHECK(r.items == 3);
  CHECK_THROWS_AS(average_precision({item(0.9, false)}), EvalError);
  CHECK_THROWS_AS(average_precision({}), EvalError);
}

TEST_CASE("recall relative to external positives") {
  const ApResult r = average_precision({item(0.9, true), item(0.5, false)}, 4);
  CHECK(r.ap == doctest::Approx(0.25));
}

TEST_CASE("ties resolve by key") {
  const std::vector<ScoredItem> a{item(0.5, false, 0), item(0.5, true, 1)};
  const std::vector<ScoredItem> b{a[1], a[0]};
  CHECK(average_precision(a).ap == average_precision(b).ap);
  CHECK(average_precision(a).ap == doctest::Approx(0.5));
}

TEST_CASE("AP matches the ranking oracle and ignores monotone transforms") {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<ScoredItem> items;
    const int n = testing::uni_int(rng, 1, 40);
    for (int k = 0; k < n; ++k) {
      items.push_back(item(testing::uni(rng, 0, 1), testing::uni_int(rng, 0, 2) == 0, k));
    }
    items[0].positive = true;
    const double ap = average_precision(items).ap;
    CHECK(ap == doctest::Approx(oracle_ap(items)).epsilon(1e-12));
    auto t = items;
    for (auto& x : t) x.score = std::exp(3 * x.score) - 7;
    CHECK(average_precision(t).ap == ap);
  }
}

TEST_CASE("naive baseline is the valid fraction") {
  const std::vector<HypothesisRecord> half{labeled(Label::ValidError),
                                           labeled(Label::Invalid)};
  CHECK(naive_baseline(half).ap == doctest::Approx(0.5));
  const std::vector<HypothesisRecord> all{labeled(Label::ValidError)};
  CHECK(naive_baseline(all).ap == 1.0);
}

TEST_CASE("scored items need labels and scores") {
  std::vector<HypothesisRecord> r{labeled(Label::ValidError)};
  CHECK_THROWS_AS(scored_items(r), EvalError);
  r[0].score = 0.4;
  const auto items = scored_items(r);
  REQUIRE(items.size() == 1);
  CHECK(items[0].positive);
  CHECK(items[0].score == 0.4);
}

TEST_CASE("F1 from counts") {
  DetectionCounts c{8, 2, 2};
  CHECK(c.f1() == doctest::Approx(0.8));
  CHECK(c.precision() == doctest::Approx(0.8));
  CHECK(c.recall() == doctest::Approx(0.8));
  CHECK(DetectionCounts{}.f1() == 0.0);
}

TEST_CASE("detection counting") {
  GroundTruthByFrame gt{{0, {car({0, 0, 50, 50}), car({100, 0, 150, 50})}}};
  GroundTruthObject dc = car({300, 0, 350, 50});
  dc.is_ignore = true;
  gt[0].push_back(dc);
  DetectionsByFrame dets{{0,
                          {det({0, 0, 50, 50}), det({200, 0, 250, 50}),
                           det({300, 0, 350, 50}), det({100, 0, 150, 50}, 0.2)}}};
  const DetectionCounts c = count_detections(dets, gt, {});
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);
}

TEST_CASE("correct error predictions raise F1") {
  GroundTruthByFrame gt{{0, {car({0, 0, 50, 50}), car({100, 0, 150, 50})}}};
  DetectionsByFrame dets{{0, {det({0, 0, 50, 50})}}};
  DetectionsByFrame errors{{0, {det({102, 0, 150, 50}, 0.6)}}};
  const F1Result r = f1_with_corrections(dets, errors, gt);
  CHECK(r.f1_before() == doctest::Approx(2.0 / 3.0));
  CHECK(r.f1_after() == doctest::Approx(1.0));

  // A duplicate of an existing detection is suppressed.
  DetectionsByFrame dup{{0, {det({0, 0, 50, 49}, 0.6)}}};
  CHECK(f1_with_corrections(dets, dup, gt).after.fp == 0);
}

TEST_CASE("fusion of identical and disjoint errors") {
  const std::vector<ScoredBox> a{det({0, 0, 50, 50})};
  FusionResult same = fuse_cues(a, a);
  CHECK(same.stats.intersection == 1);
  CHECK(same.stats.temporal_unique == 0);
  CHECK(same.stats.stereo_unique == 0);
  CHECK(same.stats.fused_total == 1);
  CHECK(same.fused.size() == 1);

  const std::vector<ScoredBox> b{det({100, 0, 150, 50})};
  FusionResult apart = fuse_cues(a, b);
  CHECK(apart.stats.intersection == 0);
  CHECK(apart.stats.temporal_total == 1);
  CHECK(apart.stats.stereo_total == 1);
  CHECK(apart.stats.fused_total == 2);
}

TEST_CASE("fusion identities on random errors") {
  testing::Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    std::vector<ScoredBox> t, s;
    for (int k = testing::uni_int(rng, 0, 6); k > 0; --k)
      t.push_back(det(testing::random_int_box(rng, 100, 60), testing::uni(rng, 0.5, 1)));
    for (int k = testing::uni_int(rng, 0, 6); k > 0; --k)
      s.push_back(det(testing::random_int_box(rng, 100, 60), testing::uni(rng, 0.5, 1)));
    const FusionStats st = fuse_cues(t, s).stats;
    CHECK(st.temporal_total == st.temporal_unique + st.intersection);
    CHECK(st.stereo_total == st.stereo_unique + st.intersection);
    CHECK(st.fused_total <= st.temporal_total + st.stereo_total);
    if (!t.empty() || !s.empty()) CHECK(st.fused_total >= 1);
  }
}

TEST_CASE("detector AP") {
  GroundTruthByFrame gt{{0, {car({0, 0, 50, 50}), car({100, 0, 150, 50})}}};
  DetectionsByFrame dets{{0, {det({0, 0, 50, 50}, 0.9), det({200, 0, 250, 50}, 0.8),
                              det({100, 0, 150, 50}, 0.1)}}};
  CHECK(detector_average_precision(dets, gt, {}).ap == doctest::Approx(5.0 / 6.0));
}
