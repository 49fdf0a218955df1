#include <doctest.h>

#include "fnmine/classifier.hpp"
#include "random_data.hpp"

using namespace fnmine;

namespace {

HypothesisRecord record(BBox b, int frame = 0, Cue cue = Cue::Temporal) {
  HypothesisRecord r;
  r.sequence = "s";
  r.hyp = {b, 0.6, cue, frame, cue == Cue::Temporal ? 3 : 0, 1};
  return r;
}

GroundTruthObject car(BBox b, bool ignore = false) {
  GroundTruthObject g;
  g.box = b;
  g.is_ignore = ignore;
  return g;
}

const BBox kCar{100, 50, 200, 100};

}  // namespace

TEST_CASE("hypothesis on a detected object is invalid") {
  const std::vector<HypothesisRecord> h{record(kCar)};
  const std::vector<ScoredBox> dets{{kCar, 0.9, Category::Car, 0}};
  const auto out = label_frame(h, dets, std::vector{car(kCar)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].label == Label::Invalid);
}

TEST_CASE("hypothesis on a missed object is valid") {
  // IoU 0.7 with the missed car.
  const std::vector<HypothesisRecord> h{record({100, 50, 170, 100})};
  const auto out = label_frame(h, {}, std::vector{car(kCar)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].label == Label::ValidError);

  // A low-confidence detection does not count as detected.
  const std::vector<ScoredBox> weak{{kCar, 0.3, Category::Car, 0}};
  CHECK(label_frame(h, weak, std::vector{car(kCar)})[0].label == Label::ValidError);
}

TEST_CASE("hypothesis on empty road is invalid") {
  const std::vector<HypothesisRecord> h{record(kCar)};
  const auto out = label_frame(h, {}, {});
  REQUIRE(out.size() == 1);
  CHECK(out[0].label == Label::Invalid);
}

TEST_CASE("hypotheses on ignore regions only are dropped") {
  const std::vector<HypothesisRecord> h{record(kCar), record({400, 50, 500, 100})};
  GroundTruthObject van = car(kCar);
  van.category = Category::Van;
  for (const GroundTruthObject& g : {car(kCar, true), van}) {
    const auto out = label_frame(h, {}, std::vector{g});
    REQUIRE(out.size() == 1);
    CHECK(out[0].hyp.box.x1 == 400);
    CHECK(out[0].label == Label::Invalid);
  }
}

TEST_CASE("one hypothesis per missed object") {
  const std::vector<HypothesisRecord> h{record(kCar), record({100, 50, 195, 100})};
  const auto out = label_frame(h, {}, std::vector{car(kCar)});
  REQUIRE(out.size() == 2);
  CHECK(out[0].label == Label::ValidError);
  CHECK(out[1].label == Label::Invalid);
}

TEST_CASE("valid labels never exceed missed objects") {
  testing::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    std::vector<GroundTruthObject> gt;
    for (int k = testing::uni_int(rng, 0, 5); k > 0; --k) {
      gt.push_back(car(testing::random_int_box(rng, 200, 100), testing::uni_int(rng, 0, 4) == 0));
    }
    std::vector<ScoredBox> dets;
    for (int k = testing::uni_int(rng, 0, 5); k > 0; --k) {
      dets.push_back({testing::random_int_box(rng, 200, 100), testing::uni(rng, 0, 1),
                      Category::Car, 0});
    }
    std::vector<HypothesisRecord> h;
    for (int k = testing::uni_int(rng, 0, 8); k > 0; --k) {
      h.push_back(record(testing::random_int_box(rng, 200, 100)));
    }
    const auto out = label_frame(h, dets, gt);
    const auto valid = std::count_if(out.begin(), out.end(), [](const auto& r) {
      return r.label == Label::ValidError;
    });
    CHECK(std::size_t(valid) <= missed_objects(dets, gt, {}).size());
    CHECK(out.size() <= h.size());
  }
}

TEST_CASE("label_hypotheses groups by frame") {
  GroundTruthByFrame gt{{0, {car(kCar)}}, {1, {car(kCar)}}};
  DetectionsByFrame dets{{1, {{kCar, 0.9, Category::Car, 1}}}};
  const std::vector<HypothesisRecord> h{record(kCar, 1), record(kCar, 0)};
  const auto out = label_hypotheses(h, dets, gt);
  REQUIRE(out.size() == 2);
  CHECK(out[0].hyp.frame == 0);
  CHECK(out[0].label == Label::ValidError);
  CHECK(out[1].label == Label::Invalid);
}

TEST_CASE("training and scoring check the cue") {
  std::vector<HypothesisRecord> recs{record(kCar), record({0, 0, 10, 10})};
  recs[0].label = Label::ValidError;
  recs[1].label = Label::Invalid;
  const ForestModel m = train_cue_model(recs, Cue::Temporal, {});
  score_records(m, recs);
  CHECK(recs[0].score.has_value());

  std::vector<HypothesisRecord> stereo{record(kCar, 0, Cue::Stereo)};
  CHECK_THROWS_AS(score_records(m, stereo), ModelError);
  CHECK_THROWS_AS(make_training_set(stereo, Cue::Temporal), ModelError);
  recs[1].label.reset();
  CHECK_THROWS_AS(make_training_set(recs, Cue::Temporal), ModelError);
}
