#include "fnmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

namespace fnmine {

namespace {

constexpr double kMinObjectHeight = 25.0;
constexpr double kObjectHeightM = 1.5;
constexpr double kMinVisibleWidth = 2.0;
constexpr double kHorizonFraction = 0.45;

enum : std::uint64_t { kSceneStream = 1, kDisparityStream = 2 };

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

double quantize(double v) { return std::round(v * 8.0) / 8.0; }

bool visible(const BBox& clipped) {
  return clipped.width() >= kMinVisibleWidth && clipped.height() > 0.0;
}

struct SceneObject {
  int id = 0;
  double depth = 0.0;
  int disparity = 0;
  double cx = 0.0;
  double vx = 0.0;
  double width = 0.0;
  double height = 0.0;
  double bottom = 0.0;
  int death_frame = 0;
};

class SceneGenerator {
 public:
  SceneGenerator(const SynthConfig& cfg, int index)
      : cfg_(cfg),
        rng_(make_rng(cfg.seed, static_cast<std::uint64_t>(index), kSceneStream)),
        width_(cfg.image_width),
        height_(cfg.image_height),
        focal_(cfg.focal_fraction * cfg.image_width),
        horizon_(kHorizonFraction * cfg.image_height) {}

  SynthSequence run(int index) {
    SynthSequence seq;
    seq.config = cfg_;
    seq.seed = cfg_.seed;
    SequenceDataset& d = seq.data;
    d.sequence_id = sequence_name(index);
    d.image_width = cfg_.image_width;
    d.image_height = cfg_.image_height;

    const int n_slots = uniform_int(cfg_.min_objects, cfg_.max_objects);
    slots_.assign(static_cast<std::size_t>(n_slots), std::nullopt);
    next_spawn_.assign(static_cast<std::size_t>(n_slots), 0);

    PoseWalker walker(rng_);
    for (int frame = 0; frame < cfg_.frames_per_sequence; ++frame) {
      d.frames.push_back(frame);
      d.poses.push_back(walker.step(frame));
      spawn(frame);
      emit_frame(frame, seq);
      advance(frame);
    }

    DetectionsByFrame confident;
    for (const auto& [frame, dets] : d.left_detections) {
      auto kept = confidence_filter(dets, cfg_.track_conf_threshold);
      if (!kept.empty()) confident[frame] = std::move(kept);
    }
    d.tracklets = baseline_track(confident, d.frames, width_, height_,
                                 cfg_.tracker);
    return seq;
  }

 private:
  struct PoseWalker {
    explicit PoseWalker(std::mt19937_64& rng) : rng(rng) {
      std::uniform_real_distribution<double> pos(0.0, 300.0);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      x = pos(rng);
      y = pos(rng);
      heading = angle(rng);
    }
    PoseRecord step(int frame) {
      const PoseRecord p{frame, x, y};
      std::normal_distribution<double> turn(0.0, 0.03);
      heading += turn(rng);
      x += std::cos(heading);
      y += std::sin(heading);
      return p;
    }
    std::mt19937_64& rng;
    double x = 0.0, y = 0.0, heading = 0.0;
  };

  double uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng_);
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  double normal(double sigma) {
    if (sigma <= 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(rng_);
  }

  SceneObject make_object(int frame, bool initial) {
    SceneObject o;
    o.id = next_id_++;
    o.depth = uniform(cfg_.min_depth_m, cfg_.max_depth_m);
    o.disparity = std::max(
        1, static_cast<int>(std::lround(focal_ * cfg_.baseline_m / o.depth)));
    o.height = focal_ * kObjectHeightM / o.depth;
    o.width = focal_ * uniform(1.7, 4.2) / o.depth;
    o.bottom = horizon_ + focal_ * cfg_.camera_height_m / o.depth;
    o.vx = uniform(cfg_.min_speed, cfg_.max_speed);
    if (initial || chance(0.3)) {
      o.cx = uniform(0.0, width_);
    } else {
      // Enter from the edge the object is moving away from.
      o.cx = o.vx >= 0.0 ? -0.25 * o.width : width_ + 0.25 * o.width;
    }
    o.death_frame = frame + uniform_int(60, 250);
    return o;
  }

  void spawn(int frame) {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (!slots_[s] && frame >= next_spawn_[s]) {
        slots_[s] = make_object(frame, frame == 0);
      }
    }
  }

  void advance(int frame) {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (!slots_[s]) continue;
      SceneObject& o = *slots_[s];
      o.cx += o.vx;
      o.vx += normal(cfg_.velocity_jitter);
      const bool gone = o.cx + 0.5 * o.width < 0.0 || o.cx - 0.5 * o.width > width_;
      if (gone || frame + 1 >= o.death_frame) {
        slots_[s].reset();
        next_spawn_[s] = frame + 1 + uniform_int(0, 10);
      }
    }
  }

  BBox left_box(const SceneObject& o) const {
    return {quantize(o.cx - 0.5 * o.width), quantize(o.bottom - o.height),
            quantize(o.cx + 0.5 * o.width), quantize(o.bottom)};
  }

  BBox jitter(const BBox& b) {
    BBox j{b.x1 + normal(cfg_.box_jitter_px), b.y1 + normal(cfg_.box_jitter_px),
           b.x2 + normal(cfg_.box_jitter_px), b.y2 + normal(cfg_.box_jitter_px)};
    if (j.x2 < j.x1 + 1.0) j.x2 = j.x1 + 1.0;
    if (j.y2 < j.y1 + 1.0) j.y2 = j.y1 + 1.0;
    return j;
  }

  double true_confidence() {
    return std::clamp(uniform(1.0 - 2.0 * cfg_.confidence_noise, 1.0), 0.0, 1.0);
  }
  double fp_confidence() { return uniform(0.5, 0.85); }

  bool overlaps_any(const BBox& b, std::span<const BBox> gt, double limit) const {
    return std::any_of(gt.begin(), gt.end(),
                       [&](const BBox& g) { return iou(b, g) >= limit; });
  }

  // False positives for one camera: loose duplicates next to visible objects
  // and an occasional background box. None overlaps real objects at 0.5.
  void add_false_positives(int frame, std::span<const BBox> objects,
                           std::vector<ScoredBox>& out) {
    for (const BBox& g : objects) {
      if (!chance(cfg_.fp_rate)) continue;
      for (int attempt = 0; attempt < 10; ++attempt) {
        const double side = chance(0.5) ? 1.0 : -1.0;
        const double dx = side * uniform(0.35, 0.7) * g.width();
        const double dy = uniform(-0.1, 0.1) * g.height();
        const double scale = uniform(0.85, 1.15);
        const double w = g.width() * scale, h = g.height() * scale;
        const double cx = g.center_x() + dx, cy = g.center_y() + dy;
        const BBox fp = clip({cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h},
                             width_, height_);
        const double ov = iou(fp, g);
        if (!visible(fp) || ov < 0.1 || ov > 0.45 ||
            overlaps_any(fp, objects, 0.45)) {
          continue;
        }
        out.push_back({fp, fp_confidence(), Category::Car, frame});
        break;
      }
    }
    if (chance(cfg_.fp_rate)) {
      const double depth = uniform(cfg_.min_depth_m, cfg_.max_depth_m);
      const double h = focal_ * kObjectHeightM / depth;
      const double w = focal_ * uniform(1.7, 4.2) / depth;
      const double bottom = horizon_ + focal_ * cfg_.camera_height_m / depth;
      const double cx = uniform(0.0, width_);
      const BBox fp = clip({cx - 0.5 * w, bottom - h, cx + 0.5 * w, bottom},
                           width_, height_);
      const double conf = fp_confidence();
      if (visible(fp) && !overlaps_any(fp, objects, 0.45)) {
        out.push_back({fp, conf, Category::Car, frame});
      }
    }
  }

  void emit_frame(int frame, SynthSequence& seq) {
    SequenceDataset& d = seq.data;
    std::vector<const SceneObject*> live;
    for (const auto& slot : slots_) {
      if (slot) live.push_back(&*slot);
    }
    // Far to near, so nearer objects paint over farther ones.
    std::stable_sort(live.begin(), live.end(),
                     [](const SceneObject* a, const SceneObject* b) {
                       return a->depth > b->depth;
                     });

    std::vector<PlacedObject> placed;
    std::vector<BBox> left_visible, right_visible;
    std::vector<ScoredBox> left_dets, right_dets;
    std::vector<GroundTruthObject> gt;

    for (const SceneObject* o : live) {
      const BBox full_left = left_box(*o);
      const BBox full_right{full_left.x1 - o->disparity, full_left.y1,
                            full_left.x2 - o->disparity, full_left.y2};
      PlacedObject p;
      p.gt_id = o->id;
      p.depth_m = o->depth;
      p.disparity = o->disparity;
      p.painted_disparity = o->disparity;
      if (chance(cfg_.disparity_error_probability)) {
        const int spread = std::max(2, o->disparity / 2);
        const int err = (chance(0.5) ? 1 : -1) * (2 + uniform_int(0, spread));
        p.painted_disparity = std::max(1, o->disparity + err);
      }
      p.left_box = clip(full_left, width_, height_);
      p.right_box = clip(full_right, width_, height_);
      p.truncated = p.left_box != full_left || p.right_box != full_right;
      const bool in_left = visible(p.left_box);
      const bool in_right = visible(p.right_box);
      if (!in_left && !in_right) continue;
      placed.push_back(p);

      bool left_missed = true;
      if (in_left) {
        left_visible.push_back(p.left_box);
        GroundTruthObject g;
        g.box = p.left_box;
        g.category = Category::Car;
        g.track_id = o->id;
        g.frame = frame;
        g.is_ignore = p.left_box.height() < kMinObjectHeight;
        gt.push_back(g);

        left_missed = chance(cfg_.miss_probability);
        std::optional<ScoredBox> det;
        if (!left_missed) {
          const BBox jb = clip(jitter(p.left_box), width_, height_);
          const double conf = true_confidence();
          if (visible(jb)) det = ScoredBox{jb, conf, Category::Car, frame};
        }
        if (det) left_dets.push_back(*det);
        const bool found = det && det->confidence >= cfg_.track_conf_threshold &&
                           iou(det->box, g.box) >= 0.5;
        if (!g.is_ignore && !found) {
          seq.oracle_misses.push_back({frame, o->id, g.box});
        }
      }
      if (in_right) {
        right_visible.push_back(p.right_box);
        const bool right_missed = (cfg_.stereo_independent || !in_left)
                                      ? chance(cfg_.miss_probability)
                                      : left_missed;
        if (!right_missed) {
          const BBox jb = clip(jitter(p.right_box), width_, height_);
          const double conf = true_confidence();
          if (visible(jb)) right_dets.push_back({jb, conf, Category::Car, frame});
        }
      }
    }

    add_false_positives(frame, left_visible, left_dets);
    add_false_positives(frame, right_visible, right_dets);

    if (!gt.empty()) d.ground_truth[frame] = std::move(gt);
    if (!left_dets.empty()) d.left_detections[frame] = std::move(left_dets);
    if (!right_dets.empty()) d.right_detections[frame] = std::move(right_dets);
    seq.placed[frame] = std::move(placed);
  }

  const SynthConfig& cfg_;
  std::mt19937_64 rng_;
  double width_;
  double height_;
  double focal_;
  double horizon_;
  std::vector<std::optional<SceneObject>> slots_;
  std::vector<int> next_spawn_;
  int next_id_ = 0;
};

struct PixelRect {
  int u0, v0, u1, v1;  // half-open
};

PixelRect pixel_rect(const BBox& b, int width, int height) {
  return {std::max(0, static_cast<int>(std::floor(b.x1))),
          std::max(0, static_cast<int>(std::floor(b.y1))),
          std::min(width, static_cast<int>(std::ceil(b.x2))),
          std::min(height, static_cast<int>(std::ceil(b.y2)))};
}

bool intersects(const PixelRect& a, const PixelRect& b) {
  return std::max(a.u0, b.u0) < std::min(a.u1, b.u1) &&
         std::max(a.v0, b.v0) < std::min(a.v1, b.v1);
}

}  // namespace

void validate(const SynthConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("synth config: ") + what);
  };
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  require(c.n_sequences >= 1, "n_sequences must be >= 1");
  require(c.frames_per_sequence >= 1, "frames_per_sequence must be >= 1");
  require(c.image_width > 0 && c.image_height > 0, "image dims must be > 0");
  require(c.min_objects >= 0 && c.max_objects >= c.min_objects,
          "object count range is invalid");
  require(c.max_speed >= c.min_speed, "speed range is invalid");
  require(c.velocity_jitter >= 0.0, "velocity_jitter must be >= 0");
  require(c.min_depth_m > 0.0 && c.max_depth_m >= c.min_depth_m,
          "depth range is invalid");
  require(c.focal_fraction > 0.0 && c.baseline_m > 0.0 && c.camera_height_m > 0.0,
          "camera parameters must be > 0");
  require(prob(c.miss_probability), "miss_probability must be in [0,1]");
  require(prob(c.fp_rate), "fp_rate must be in [0,1]");
  require(c.confidence_noise >= 0.0 && c.confidence_noise <= 0.5,
          "confidence_noise must be in [0,0.5]");
  require(c.box_jitter_px >= 0.0, "box_jitter_px must be >= 0");
  require(prob(c.disparity_error_probability),
          "disparity_error_probability must be in [0,1]");
  require(prob(c.speckle_fraction) && c.speckle_fraction < 1.0,
          "speckle_fraction must be in [0,1)");
  require(prob(c.track_conf_threshold), "track_conf_threshold must be in [0,1]");
}

std::string sequence_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "seq_%04d", index);
  return buf;
}

SynthSequence generate_sequence(const SynthConfig& config, int index) {
  validate(config);
  SceneGenerator gen(config, index);
  return gen.run(index);
}

DisparityMap render_disparity(const SynthSequence& seq, int frame) {
  const SynthConfig& cfg = seq.config;
  const int w = cfg.image_width, h = cfg.image_height;
  DisparityMap map(w, h);

  // Ground plane below the horizon, 1 px above it.
  const double horizon = kHorizonFraction * h;
  for (int v = 0; v < h; ++v) {
    const double row_center = v + 0.5;
    const double d = row_center > horizon
                         ? std::max(1.0, cfg.baseline_m * (row_center - horizon) /
                                             cfg.camera_height_m)
                         : 1.0;
    for (int u = 0; u < w; ++u) map.set_disparity(u, v, d);
  }

  const auto it = seq.placed.find(frame);
  if (it != seq.placed.end()) {
    for (const PlacedObject& p : it->second) {
      if (!visible(p.right_box)) continue;
      const PixelRect r = pixel_rect(p.right_box, w, h);
      const auto raw = static_cast<std::uint16_t>(p.painted_disparity * 256);
      for (int v = r.v0; v < r.v1; ++v) {
        for (int u = r.u0; u < r.u1; ++u) map.set_raw(u, v, raw);
      }
    }
  }

  if (cfg.speckle_fraction > 0.0) {
    auto rng = make_rng(seq.seed, static_cast<std::uint64_t>(frame) * 1024 +
                                      std::hash<std::string>{}(seq.data.sequence_id) % 1024,
                        kDisparityStream);
    std::geometric_distribution<long> gap(cfg.speckle_fraction);
    const long total = static_cast<long>(w) * h;
    for (long pos = gap(rng); pos < total; pos += 1 + gap(rng)) {
      map.set_raw(static_cast<int>(pos % w), static_cast<int>(pos / w), 0);
    }
  }
  return map;
}

bool unoccluded(const SynthSequence& seq, int frame, int gt_id) {
  const auto it = seq.placed.find(frame);
  if (it == seq.placed.end()) return false;
  const auto& objs = it->second;
  const int w = seq.config.image_width, h = seq.config.image_height;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (objs[i].gt_id != gt_id) continue;
    if (objs[i].truncated) return false;
    const PixelRect mine = pixel_rect(objs[i].right_box, w, h);
    for (std::size_t j = i + 1; j < objs.size(); ++j) {
      if (intersects(mine, pixel_rect(objs[j].right_box, w, h))) return false;
    }
    return true;
  }
  return false;
}

OracleAgreement oracle_label_check(
    std::span<const HypothesisRecord> labeled,
    const std::map<std::string, std::vector<OracleMiss>>& oracle,
    double min_iou) {
  OracleAgreement out;
  for (const HypothesisRecord& r : labeled) {
    if (!r.label || *r.label != Label::ValidError) continue;
    ++out.valid_checked;
    bool found = false;
    const auto it = oracle.find(r.sequence);
    if (it != oracle.end()) {
      for (const OracleMiss& m : it->second) {
        if (m.frame == r.hyp.frame && iou(m.box, r.hyp.box) >= min_iou) {
          found = true;
          break;
        }
      }
    }
    if (found) {
      ++out.agreed;
    } else {
      out.disagreements.push_back(r);
    }
  }
  return out;
}

}  // namespace fnmine
