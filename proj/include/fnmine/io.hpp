#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/forest.hpp"
#include "fnmine/hypothesis.hpp"
#include "fnmine/stereo.hpp"
#include "fnmine/temporal.hpp"

namespace fnmine {

// Malformed input. `line()` is 1-based, 0 when the error is not tied to a
// line (binary formats, missing files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Shortest decimal text that reads back to the identical double.
std::string format_double(double value);

// --- KITTI tracking labels -------------------------------------------------
// frame track_id type truncated occluded alpha left top right bottom
// [h w l x y z rotation_y [score]]. 3D fields are validated as numbers and
// otherwise ignored.
GroundTruthByFrame parse_kitti_labels(std::istream& in, double min_height,
                                      bool collapse_classes);
void write_kitti_labels(std::ostream& out, const GroundTruthByFrame& labels);

// --- detections: "frame category confidence x1 y1 x2 y2" ------------------
DetectionsByFrame parse_detections(std::istream& in);
void write_detections(std::ostream& out, const DetectionsByFrame& dets);

// --- tracklets: "frame track_id confidence x1 y1 x2 y2" -------------------
// Track length at a frame is the number of entries of that track up to and
// including the frame. Tracklets are Car boxes.
TrackletsByFrame parse_tracklets(std::istream& in);
void write_tracklets(std::ostream& out, const TrackletsByFrame& tracks);

// --- disparity: binary 16-bit PGM, maxval 65535, big-endian, d * 256 ------
DisparityMap read_disparity(std::istream& in);
void write_disparity(std::ostream& out, const DisparityMap& map);

// 8-bit binary PGM (maxval 255), row-major.
void write_pgm8(std::ostream& out, int width, int height,
                std::span<const unsigned char> pixels);

// --- poses: CSV "frame,x_m,y_m" with an optional header row ---------------
std::vector<PoseRecord> read_poses(std::istream& in);
void write_poses(std::ostream& out, std::span<const PoseRecord> poses);

// --- forest model: versioned text document ---------------------------------
inline constexpr int kModelFormatVersion = 1;
void write_model(std::ostream& out, const ForestModel& model);
// Throws ModelError on version mismatch or structural problems.
ForestModel read_model(std::istream& in);

// --- hypotheses table ------------------------------------------------------
// The 12 feature columns in frozen order, then
// cue,frame,x1,y1,x2,y2,source,label,score. label and score may be empty.
// The r and n columns always carry the hypothesis confidence and track length.
std::string hypotheses_csv_header();
void write_hypotheses_csv(std::ostream& out,
                          std::span<const HypothesisRecord> records);
// Rejects a header whose feature columns differ from the frozen order.
std::vector<HypothesisRecord> read_hypotheses_csv(std::istream& in,
                                                  const std::string& sequence);

// --- file helpers ----------------------------------------------------------
// Opens `path` and forwards to a stream parser, prefixing errors with the
// path. Binary mode is always used.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

template <typename Fn>
auto parse_file(const std::filesystem::path& path, Fn&& parse);

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& write);

}  // namespace fnmine

#include "fnmine/io_file.inl"
