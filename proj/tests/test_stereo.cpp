#include <doctest.h>

#include "fnmine/stereo.hpp"
#include "random_data.hpp"

using namespace fnmine;

namespace {

DisparityMap filled(int w, int h, double d) {
  DisparityMap m(w, h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) m.set_disparity(u, v, d);
  return m;
}

ScoredBox det(BBox b, double conf = 0.9) { return {b, conf, Category::Car, 0}; }

}  // namespace

TEST_CASE("median disparity over a region") {
  DisparityMap m(4, 1);
  m.set_disparity(0, 0, 10);
  m.set_disparity(1, 0, 12);
  m.set_disparity(2, 0, 14);
  CHECK(median_disparity(m, {0, 0, 3, 1}) == 12.0);

  DisparityMap n(4, 1);
  n.set_disparity(1, 0, 12);
  n.set_disparity(2, 0, 14);
  n.set_disparity(3, 0, 16);
  CHECK(median_disparity(n, {0, 0, 4, 1}) == 14.0);

  DisparityMap e(2, 1);
  e.set_disparity(0, 0, 10);
  e.set_disparity(1, 0, 20);
  CHECK(median_disparity(e, {0, 0, 2, 1}) == 15.0);
}

TEST_CASE("median disparity covers partially overlapped pixels") {
  DisparityMap m = filled(10, 1, 5);
  m.set_disparity(9, 0, 60);
  // Columns floor(2.5)..ceil(8.25)-1 = 2..8.
  CHECK(median_disparity(m, {2.5, 0, 8.25, 1}) == 5.0);
}

TEST_CASE("median disparity with too few valid pixels") {
  DisparityMap m(10, 1);
  m.set_disparity(0, 0, 7);  // 10% valid
  CHECK_FALSE(median_disparity(m, {0, 0, 10, 1}).has_value());
  m.set_disparity(1, 0, 7);
  m.set_disparity(2, 0, 7);  // 30%
  CHECK(median_disparity(m, {0, 0, 10, 1}) == 7.0);
  CHECK_THROWS_AS(median_disparity(m, {20, 0, 30, 1}), GeometryError);
}

TEST_CASE("median disparity ignores pixel order and invalid values") {
  testing::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint16_t> raw(60);
    for (auto& r : raw) r = testing::uni_int(rng, 0, 2) ? testing::uni_int(rng, 1, 9000) : 0;
    const DisparityMap a(60, 1, raw);
    std::shuffle(raw.begin(), raw.end(), rng);
    const DisparityMap b(60, 1, raw);
    CHECK(median_disparity(a, {0, 0, 60, 1}, 0.0) == median_disparity(b, {0, 0, 60, 1}, 0.0));
  }
}

TEST_CASE("shift moves right boxes into the left image") {
  const DisparityMap m = filled(300, 200, 20);
  const auto r = shift_detections(std::vector<ScoredBox>{det({100, 50, 150, 100})}, m, 0.5);
  REQUIRE(r.boxes.size() == 1);
  CHECK(r.boxes[0].box.box == BBox{120, 50, 170, 100});
  CHECK(r.boxes[0].source_index == 0);
  CHECK(r.dropped == 0);
}

TEST_CASE("shift drops boxes without enough disparity or leaving the image") {
  DisparityMap m(300, 200);
  auto r = shift_detections(std::vector<ScoredBox>{det({100, 50, 150, 100})}, m, 0.5);
  CHECK(r.boxes.empty());
  CHECK(r.dropped == 1);

  const DisparityMap far = filled(300, 200, 100);
  r = shift_detections(std::vector<ScoredBox>{det({210, 50, 260, 100})}, far, 0.5);
  CHECK(r.boxes.empty());
  CHECK(r.dropped == 1);

  // Below the confidence threshold: skipped, not dropped.
  r = shift_detections(std::vector<ScoredBox>{det({10, 5, 20, 15}, 0.2)}, far, 0.5);
  CHECK(r.boxes.empty());
  CHECK(r.dropped == 0);
}

TEST_CASE("shift preserves size and vertical extent") {
  testing::Rng rng(21);
  const DisparityMap m = filled(400, 300, 17.25);
  for (int i = 0; i < 200; ++i) {
    const BBox b = testing::random_box(rng, 300, 250);
    const auto r = shift_detections(std::vector<ScoredBox>{det(b)}, m, 0.0);
    for (const ShiftedBox& s : r.boxes) {
      CHECK(s.box.box.width() == doctest::Approx(b.width()).epsilon(1e-12));
      CHECK(s.box.box.y1 == b.y1);
      CHECK(s.box.box.y2 == b.y2);
    }
  }
}

TEST_CASE("stereo hypotheses") {
  const std::vector<ScoredBox> left{det({120, 50, 170, 100})};
  const std::vector<ShiftedBox> matched{{det({120, 50, 170, 100}), 0}};
  CHECK(generate_stereo_hypotheses(matched, left, 0.5).empty());

  const std::vector<ShiftedBox> lonely{{det({300, 50, 350, 100}, 0.7), 3}};
  const auto h = generate_stereo_hypotheses(lonely, left, 0.5);
  REQUIRE(h.size() == 1);
  CHECK(h[0].box == BBox{300, 50, 350, 100});
  CHECK(h[0].confidence == 0.7);
  CHECK(h[0].track_length == 0);
  CHECK(h[0].source_id == 3);
  CHECK(h[0].cue == Cue::Stereo);

  // A left-only detection proposes nothing.
  CHECK(generate_stereo_hypotheses({}, left, 0.5).empty());
}

TEST_CASE("an all-invalid map with identical detections yields no hypotheses") {
  const std::vector<ScoredBox> dets{det({10, 10, 40, 40}), det({60, 10, 90, 40})};
  const DisparityMap zero(100, 50);
  const auto shifted = shift_detections(dets, zero, 0.5);
  CHECK(generate_stereo_hypotheses(shifted.boxes, dets, 0.5).empty());
}

TEST_CASE("mirrored inputs with the opposite sign give mirrored shifts") {
  testing::Rng rng(31);
  const int w = 200, h = 60;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint16_t> raw(w * h);
    for (auto& r : raw) r = testing::uni_int(rng, 0, 4) ? testing::uni_int(rng, 256, 256 * 40) : 0;
    const DisparityMap map(w, h, raw);
    std::vector<ScoredBox> dets, mirrored;
    for (int k = 0; k < 6; ++k) {
      // Quarter-pixel corners keep every sum exact.
      const double x1 = testing::uni_int(rng, 0, 4 * (w - 10)) / 4.0;
      const double y1 = testing::uni_int(rng, 0, 4 * (h - 10)) / 4.0;
      const BBox b{x1, y1, x1 + testing::uni_int(rng, 4, 160) / 4.0,
                   y1 + testing::uni_int(rng, 4, 36) / 4.0};
      dets.push_back(det(b));
      mirrored.push_back(det(mirror(b, w)));
    }
    const auto a = shift_detections(dets, map, 0.5, ShiftSign::Positive);
    const auto b = shift_detections(mirrored, mirror(map), 0.5, ShiftSign::Negative);
    REQUIRE(a.boxes.size() == b.boxes.size());
    CHECK(a.dropped == b.dropped);
    for (std::size_t k = 0; k < a.boxes.size(); ++k) {
      CHECK(b.boxes[k].source_index == a.boxes[k].source_index);
      CHECK(b.boxes[k].box.box == mirror(a.boxes[k].box.box, w));
    }
  }
}

TEST_CASE("disparity map storage") {
  DisparityMap m(2, 2);
  m.set_disparity(0, 0, 20.0);
  CHECK(m.raw(0, 0) == 5120);
  m.set_disparity(1, 0, 0.0);
  CHECK_FALSE(m.valid(1, 0));
  CHECK(mirror(mirror(m)) == m);
}
