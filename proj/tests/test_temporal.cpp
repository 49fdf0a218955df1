#include <doctest.h>

#include "fnmine/temporal.hpp"
#include "random_data.hpp"

using namespace fnmine;

namespace {

Tracklet track(int id, BBox b, double conf = 0.8, int frame = 0, int length = 3) {
  return {id, {b, conf, Category::Car, frame}, length};
}
ScoredBox det(BBox b, double conf = 0.9, int frame = 0) {
  return {b, conf, Category::Car, frame};
}

}  // namespace

TEST_CASE("matched tracklet yields no hypothesis") {
  const std::vector<Tracklet> t{track(1, {0, 0, 100, 100})};
  const std::vector<ScoredBox> d{det({0, 0, 100, 95})};  // IoU 0.95
  CHECK(generate_temporal_hypotheses(t, d, 0.5).empty());
}

TEST_CASE("tracklet without detections becomes a hypothesis") {
  const std::vector<Tracklet> t{track(4, {10, 20, 60, 80}, 0.7, 12, 6)};
  const auto h = generate_temporal_hypotheses(t, {}, 0.5);
  REQUIRE(h.size() == 1);
  CHECK(h[0].box == BBox{10, 20, 60, 80});
  CHECK(h[0].confidence == 0.7);
  CHECK(h[0].frame == 12);
  CHECK(h[0].track_length == 6);
  CHECK(h[0].source_id == 4);
  CHECK(h[0].cue == Cue::Temporal);
}

TEST_CASE("one detection explains only one of two tracklets") {
  // Detection (0,0,10,10); IoU 0.6 with t0 and 0.55 with t1.
  const BBox d0{0, 0, 10, 10};
  const BBox t0{0, 0, 10, 6};        // 60 / 100
  const BBox t1{0, 0, 10, 5.5};      // 55 / 100
  CHECK(iou(d0, t0) == doctest::Approx(0.6));
  CHECK(iou(d0, t1) == doctest::Approx(0.55));
  const std::vector<Tracklet> t{track(0, t0), track(1, t1)};
  const auto h = generate_temporal_hypotheses(t, std::vector<ScoredBox>{det(d0)}, 0.5);
  // Exhaustive: pairing d0 with t0 costs 0.4, with t1 costs 0.45.
  REQUIRE(h.size() == 1);
  CHECK(h[0].source_id == 1);
}

TEST_CASE("low-confidence detections do not explain tracklets") {
  const std::vector<Tracklet> t{track(1, {0, 0, 100, 100})};
  CHECK(generate_temporal_hypotheses(t, std::vector<ScoredBox>{det({0, 0, 100, 100}, 0.3)}, 0.5)
            .size() == 1);
}

TEST_CASE("hypotheses are verbatim tracklet boxes and never exceed tracklets") {
  testing::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<Tracklet> t;
    std::vector<ScoredBox> d;
    for (int k = testing::uni_int(rng, 0, 6); k > 0; --k) {
      t.push_back(track(k, testing::random_box(rng, 200, 100)));
    }
    for (int k = testing::uni_int(rng, 0, 6); k > 0; --k) {
      d.push_back(det(testing::random_box(rng, 200, 100), testing::uni(rng, 0, 1)));
    }
    const auto h = generate_temporal_hypotheses(t, d, 0.5);
    CHECK(h.size() <= t.size());
    for (const Hypothesis& x : h) {
      CHECK(std::any_of(t.begin(), t.end(), [&](const Tracklet& tr) {
        return tr.box.box == x.box && tr.track_id == x.source_id;
      }));
    }
    std::vector<ScoredBox> same;
    for (const Tracklet& tr : t) same.push_back(det(tr.box.box));
    CHECK(generate_temporal_hypotheses(t, same, 0.5).empty());
  }
}

TEST_CASE("tracker follows a static object without coasting") {
  DetectionsByFrame dets;
  std::vector<int> frames;
  for (int f = 0; f < 20; ++f) {
    dets[f] = {det({100, 50, 150, 90}, 0.9, f)};
    frames.push_back(f);
  }
  const auto tracks = baseline_track(dets, frames, 640, 192);
  for (int f = 0; f < 20; ++f) {
    REQUIRE(tracks.at(f).size() == 1);
    CHECK(tracks.at(f)[0].track_id == 0);
    CHECK(tracks.at(f)[0].length == f + 1);
    CHECK(tracks.at(f)[0].box.confidence == 0.9);
    CHECK(generate_temporal_hypotheses(tracks.at(f), dets.at(f), 0.5).empty());
  }
}

TEST_CASE("tracker coasts through a single missed frame") {
  DetectionsByFrame dets;
  std::vector<int> frames;
  for (int f = 0; f < 10; ++f) {
    frames.push_back(f);
    if (f != 6) dets[f] = {det({100.0 + 2 * f, 50, 150.0 + 2 * f, 90}, 0.8, f)};
  }
  const auto tracks = baseline_track(dets, frames, 640, 192);
  const auto& at6 = tracks.at(6);
  REQUIRE(at6.size() == 1);
  CHECK(at6[0].box.confidence == doctest::Approx(0.8 * 0.9));
  CHECK(at6[0].box.box.x1 == doctest::Approx(112));
  CHECK(at6[0].length == 7);
  const auto h = generate_temporal_hypotheses(at6, {}, 0.5);
  REQUIRE(h.size() == 1);
  CHECK(iou(h[0].box, {112, 50, 162, 90}) >= 0.99);
  // Picked up again afterwards under the same id.
  CHECK(tracks.at(7)[0].track_id == at6[0].track_id);
  CHECK(tracks.at(7)[0].length == 8);
}

TEST_CASE("tracker terminates tracks after the coast budget") {
  DetectionsByFrame dets;
  std::vector<int> frames;
  for (int f = 0; f < 20; ++f) {
    frames.push_back(f);
    if (f < 5) dets[f] = {det({100, 50, 150, 90}, 0.8, f)};
  }
  TrackerParams p;
  const auto tracks = baseline_track(dets, frames, 640, 192, p);
  for (int f = 5; f < 5 + p.max_coast; ++f) CHECK(tracks.at(f).size() == 1);
  for (int f = 5 + p.max_coast; f < 20; ++f) CHECK(tracks.count(f) == 0);
}

TEST_CASE("coasted tracks leaving the image end") {
  DetectionsByFrame dets;
  std::vector<int> frames;
  for (int f = 0; f < 10; ++f) {
    frames.push_back(f);
    if (f < 3) dets[f] = {det({20.0 - 10 * f, 50, 40.0 - 10 * f, 90}, 0.8, f)};
  }
  const auto tracks = baseline_track(dets, frames, 640, 192);
  // Predicted right edge: 30, 20, 10, 0 at frames 1..4 (box width 20, moving -10).
  CHECK(tracks.at(3).size() == 1);
  CHECK(tracks.at(3)[0].box.box == BBox{0, 50, 10, 90});
  CHECK(tracks.count(4) == 0);
}

TEST_CASE("tracker rejects non-increasing frames") {
  BaselineTracker t(100, 100);
  t.step(3, {});
  CHECK_THROWS_AS(t.step(3, {}), std::invalid_argument);
}
