#include "fnmine/store.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "fnmine/io.hpp"
#include "text_util.hpp"

namespace fnmine {

namespace fs = std::filesystem;

fs::path disparity_path(const fs::path& seq_dir, int frame) {
  char name[32];
  std::snprintf(name, sizeof name, "%06d.pgm", frame);
  return seq_dir / "disparity" / name;
}

SequenceMeta read_meta(const fs::path& seq_dir) {
  const fs::path path = seq_dir / "meta.json";
  const std::string text = read_text_file(path);
  SequenceMeta m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.sequence_id = j.at("sequence_id").get<std::string>();
    m.image_width = j.at("image_width").get<int>();
    m.image_height = j.at("image_height").get<int>();
    m.first_frame = j.at("first_frame").get<int>();
    m.frame_count = j.at("frame_count").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  if (m.image_width <= 0 || m.image_height <= 0 || m.frame_count < 0 ||
      m.first_frame < 0) {
    throw ParseError(0, path.string() + ": invalid image dims or frame range");
  }
  return m;
}

void write_meta(const fs::path& seq_dir, const SequenceMeta& m) {
  nlohmann::ordered_json j;
  j["sequence_id"] = m.sequence_id;
  j["image_width"] = m.image_width;
  j["image_height"] = m.image_height;
  j["first_frame"] = m.first_frame;
  j["frame_count"] = m.frame_count;
  write_text_file(seq_dir / "meta.json", j.dump(2) + "\n");
}

LoadedSequence load_sequence(const fs::path& seq_dir) {
  LoadedSequence out;
  out.dir = seq_dir;
  const SequenceMeta meta = read_meta(seq_dir);
  SequenceDataset& d = out.data;
  d.sequence_id = meta.sequence_id;
  d.image_width = meta.image_width;
  d.image_height = meta.image_height;
  for (int i = 0; i < meta.frame_count; ++i) d.frames.push_back(meta.first_frame + i);

  d.left_detections = parse_file(seq_dir / "detections_left.txt",
                                 [](std::istream& in) { return parse_detections(in); });
  d.right_detections = parse_file(seq_dir / "detections_right.txt",
                                  [](std::istream& in) { return parse_detections(in); });
  d.tracklets = parse_file(seq_dir / "tracklets.txt",
                           [](std::istream& in) { return parse_tracklets(in); });
  if (fs::exists(seq_dir / "labels.txt")) {
    d.ground_truth = parse_file(seq_dir / "labels.txt", [](std::istream& in) {
      return parse_kitti_labels(in, kMinLabelHeight, true);
    });
    out.has_labels = true;
  }
  if (fs::exists(seq_dir / "poses.csv")) {
    d.poses = parse_file(seq_dir / "poses.csv",
                         [](std::istream& in) { return read_poses(in); });
  }
  return out;
}

std::vector<fs::path> list_sequences(const fs::path& root) {
  if (fs::exists(root / "meta.json")) return {root};
  std::vector<fs::path> out;
  if (!fs::is_directory(root)) {
    throw ParseError(0, root.string() + ": not a directory");
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_oracle_misses(std::ostream& out, const std::vector<OracleMiss>& misses) {
  for (const OracleMiss& m : misses) {
    out << m.frame << ' ' << m.gt_id << ' ' << format_double(m.box.x1) << ' '
        << format_double(m.box.y1) << ' ' << format_double(m.box.x2) << ' '
        << format_double(m.box.y2) << '\n';
  }
}

std::vector<OracleMiss> parse_oracle_misses(std::istream& in) {
  using namespace detail;
  std::vector<OracleMiss> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    if (blank(line)) continue;
    const std::size_t ln = reader.number();
    const auto tok = split_ws(line);
    if (tok.size() != 6) throw ParseError(ln, "expected 'frame gt_id x1 y1 x2 y2'");
    OracleMiss m;
    m.frame = to_int(tok[0], ln, "frame");
    m.gt_id = to_int(tok[1], ln, "gt_id");
    m.box = checked_box(to_double(tok[2], ln, "x1"), to_double(tok[3], ln, "y1"),
                        to_double(tok[4], ln, "x2"), to_double(tok[5], ln, "y2"), ln);
    out.push_back(m);
  }
  return out;
}

void write_synth_sequence(const fs::path& dir, const SynthSequence& seq) {
  const SequenceDataset& d = seq.data;
  fs::create_directories(dir / "disparity");
  write_meta(dir, {d.sequence_id, d.image_width, d.image_height,
                   d.frames.empty() ? 0 : d.frames.front(),
                   static_cast<int>(d.frames.size())});
  write_file(dir / "labels.txt",
             [&](std::ostream& o) { write_kitti_labels(o, d.ground_truth); });
  write_file(dir / "detections_left.txt",
             [&](std::ostream& o) { write_detections(o, d.left_detections); });
  write_file(dir / "detections_right.txt",
             [&](std::ostream& o) { write_detections(o, d.right_detections); });
  write_file(dir / "tracklets.txt",
             [&](std::ostream& o) { write_tracklets(o, d.tracklets); });
  write_file(dir / "poses.csv", [&](std::ostream& o) { write_poses(o, d.poses); });
  write_file(dir / "oracle_misses.txt",
             [&](std::ostream& o) { write_oracle_misses(o, seq.oracle_misses); });
  for (const auto& [frame, dets] : d.right_detections) {
    const DisparityMap map = render_disparity(seq, frame);
    write_file(disparity_path(dir, frame),
               [&](std::ostream& o) { write_disparity(o, map); });
  }
}

}  // namespace fnmine
