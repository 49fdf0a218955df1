#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "fnmine/io.hpp"
#include "text_util.hpp"

namespace fnmine {

using detail::checked_box;
using detail::LineReader;
using detail::to_double;
using detail::to_int;

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return {buf.data(), ptr};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, [&](std::ostream& out) { out << text; });
}

// --- KITTI labels ------------------------------------------------------------

GroundTruthByFrame parse_kitti_labels(std::istream& in, double min_height,
                                      bool collapse_classes) {
  GroundTruthByFrame out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    if (detail::blank(line)) continue;
    const std::size_t ln = reader.number();
    const auto tok = detail::split_ws(line);
    if (tok.size() != 10 && tok.size() != 17 && tok.size() != 18) {
      throw ParseError(ln, "expected 10, 17 or 18 fields, found " +
                               std::to_string(tok.size()));
    }

    GroundTruthObject obj;
    obj.frame = to_int(tok[0], ln, "frame");
    obj.track_id = to_int(tok[1], ln, "track_id");
    if (obj.frame < 0) throw ParseError(ln, "negative frame index");
    try {
      obj.category = category_from_string(tok[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, e.what());
    }
    to_double(tok[3], ln, "truncated");
    to_double(tok[4], ln, "occluded");
    to_double(tok[5], ln, "alpha");
    obj.box = checked_box(to_double(tok[6], ln, "left"),
                          to_double(tok[7], ln, "top"),
                          to_double(tok[8], ln, "right"),
                          to_double(tok[9], ln, "bottom"), ln);
    for (std::size_t i = 10; i < std::min<std::size_t>(tok.size(), 17); ++i) {
      to_double(tok[i], ln, "3d");
    }
    if (tok.size() == 18) obj.score = to_double(tok[17], ln, "score");

    if (collapse_classes &&
        (obj.category == Category::Van || obj.category == Category::Truck)) {
      obj.category = Category::Car;
    }
    obj.is_ignore = obj.category == Category::DontCare ||
                    obj.box.height() < min_height;
    out[obj.frame].push_back(obj);
  }
  return out;
}

void write_kitti_labels(std::ostream& out, const GroundTruthByFrame& labels) {
  for (const auto& [frame, objects] : labels) {
    for (const GroundTruthObject& o : objects) {
      out << frame << ' ' << o.track_id << ' ' << to_string(o.category)
          << " 0 0 -10 " << format_double(o.box.x1) << ' '
          << format_double(o.box.y1) << ' ' << format_double(o.box.x2) << ' '
          << format_double(o.box.y2) << " -1 -1 -1 -1000 -1000 -1000 -10";
      if (o.score) out << ' ' << format_double(*o.score);
      out << '\n';
    }
  }
}

DetectionsByFrame to_detections(const GroundTruthByFrame& labels) {
  DetectionsByFrame out;
  for (const auto& [frame, objects] : labels) {
    for (const GroundTruthObject& o : objects) {
      if (!o.score || o.category == Category::DontCare) continue;
      out[frame].push_back({o.box, std::clamp(*o.score, 0.0, 1.0), o.category,
                            frame});
    }
  }
  return out;
}

// --- detections --------------------------------------------------------------

DetectionsByFrame parse_detections(std::istream& in) {
  DetectionsByFrame out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    if (detail::blank(line)) continue;
    const std::size_t ln = reader.number();
    const auto tok = detail::split_ws(line);
    if (tok.size() != 7) {
      throw ParseError(ln, "expected 7 fields 'frame category confidence x1 "
                           "y1 x2 y2', found " + std::to_string(tok.size()));
    }
    ScoredBox d;
    d.frame = to_int(tok[0], ln, "frame");
    if (d.frame < 0) throw ParseError(ln, "negative frame index");
    try {
      d.category = category_from_string(tok[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, e.what());
    }
    d.confidence = to_double(tok[2], ln, "confidence");
    if (d.confidence < 0.0 || d.confidence > 1.0) {
      throw ParseError(ln, "confidence out of range [0,1]: " +
                               std::string(tok[2]));
    }
    d.box = checked_box(to_double(tok[3], ln, "x1"), to_double(tok[4], ln, "y1"),
                        to_double(tok[5], ln, "x2"), to_double(tok[6], ln, "y2"),
                        ln);
    out[d.frame].push_back(d);
  }
  return out;
}

void write_detections(std::ostream& out, const DetectionsByFrame& dets) {
  for (const auto& [frame, boxes] : dets) {
    for (const ScoredBox& d : boxes) {
      out << frame << ' ' << to_string(d.category) << ' '
          << format_double(d.confidence) << ' ' << format_double(d.box.x1)
          << ' ' << format_double(d.box.y1) << ' ' << format_double(d.box.x2)
          << ' ' << format_double(d.box.y2) << '\n';
    }
  }
}

// --- tracklets ---------------------------------------------------------------

TrackletsByFrame parse_tracklets(std::istream& in) {
  TrackletsByFrame out;
  std::set<std::pair<int, int>> seen;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    if (detail::blank(line)) continue;
    const std::size_t ln = reader.number();
    const auto tok = detail::split_ws(line);
    if (tok.size() != 7) {
      throw ParseError(ln, "expected 7 fields 'frame track_id confidence x1 y1 "
                           "x2 y2', found " + std::to_string(tok.size()));
    }
    Tracklet t;
    t.box.frame = to_int(tok[0], ln, "frame");
    t.track_id = to_int(tok[1], ln, "track_id");
    if (t.box.frame < 0) throw ParseError(ln, "negative frame index");
    if (!seen.emplace(t.box.frame, t.track_id).second) {
      throw ParseError(ln, "duplicate entry for frame " +
                               std::to_string(t.box.frame) + " track " +
                               std::to_string(t.track_id));
    }
    t.box.confidence = to_double(tok[2], ln, "confidence");
    if (t.box.confidence < 0.0 || t.box.confidence > 1.0) {
      throw ParseError(ln, "confidence out of range [0,1]: " +
                               std::string(tok[2]));
    }
    t.box.box = checked_box(to_double(tok[3], ln, "x1"),
                            to_double(tok[4], ln, "y1"),
                            to_double(tok[5], ln, "x2"),
                            to_double(tok[6], ln, "y2"), ln);
    out[t.box.frame].push_back(t);
  }

  // Frames iterate in increasing order, so a running count is the length.
  std::map<int, int> counts;
  for (auto& [frame, tracks] : out) {
    for (Tracklet& t : tracks) t.length = ++counts[t.track_id];
  }
  return out;
}

void write_tracklets(std::ostream& out, const TrackletsByFrame& tracks) {
  for (const auto& [frame, list] : tracks) {
    for (const Tracklet& t : list) {
      out << frame << ' ' << t.track_id << ' '
          << format_double(t.box.confidence) << ' ' << format_double(t.box.box.x1)
          << ' ' << format_double(t.box.box.y1) << ' '
          << format_double(t.box.box.x2) << ' ' << format_double(t.box.box.y2)
          << '\n';
    }
  }
}

// --- poses -------------------------------------------------------------------

std::vector<PoseRecord> read_poses(std::istream& in) {
  std::vector<PoseRecord> out;
  std::set<int> frames;
  LineReader reader(in);
  std::string line;
  bool first = true;
  while (reader.next(line)) {
    if (detail::blank(line)) continue;
    const std::size_t ln = reader.number();
    const std::string_view trimmed = detail::trim(line);
    if (first && trimmed == "frame,x_m,y_m") {
      first = false;
      continue;
    }
    first = false;
    const auto tok = detail::split_char(trimmed, ',');
    if (tok.size() != 3) {
      throw ParseError(ln, "expected 'frame,x_m,y_m', found " +
                               std::to_string(tok.size()) + " fields");
    }
    PoseRecord p;
    p.frame = to_int(detail::trim(tok[0]), ln, "frame");
    p.x_m = to_double(detail::trim(tok[1]), ln, "x_m");
    p.y_m = to_double(detail::trim(tok[2]), ln, "y_m");
    if (!frames.insert(p.frame).second) {
      throw ParseError(ln, "duplicate pose for frame " + std::to_string(p.frame));
    }
    out.push_back(p);
  }
  return out;
}

void write_poses(std::ostream& out, std::span<const PoseRecord> poses) {
  out << "frame,x_m,y_m\n";
  for (const PoseRecord& p : poses) {
    out << p.frame << ',' << format_double(p.x_m) << ',' << format_double(p.y_m)
        << '\n';
  }
}

}  // namespace fnmine
