#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fnmine/dataset.hpp"
#include "fnmine/stereo.hpp"
#include "fnmine/synth.hpp"

namespace fnmine {

// On-disk sequence directory:
//   meta.json               sequence_id, image_width, image_height,
//                           first_frame, frame_count
//   labels.txt              KITTI tracking labels (optional)
//   detections_left.txt     detections_right.txt
//   tracklets.txt           poses.csv (optional)
//   disparity/NNNNNN.pgm    one per frame with right detections
//   oracle_misses.txt       synthetic runs only
struct SequenceMeta {
  std::string sequence_id;
  int image_width = 0;
  int image_height = 0;
  int first_frame = 0;
  int frame_count = 0;
};

// Objects shorter than this are ignore regions when labels are loaded.
inline constexpr double kMinLabelHeight = 25.0;

struct LoadedSequence {
  SequenceDataset data;
  bool has_labels = false;
  std::filesystem::path dir;
};

std::filesystem::path disparity_path(const std::filesystem::path& seq_dir,
                                     int frame);

SequenceMeta read_meta(const std::filesystem::path& seq_dir);
void write_meta(const std::filesystem::path& seq_dir, const SequenceMeta& meta);

// Loads what exists; detections and tracklets files are required.
LoadedSequence load_sequence(const std::filesystem::path& seq_dir);

// Directories under root holding a meta.json, sorted by name. A root that is
// itself a sequence directory yields just itself.
std::vector<std::filesystem::path> list_sequences(const std::filesystem::path& root);

// "frame gt_id x1 y1 x2 y2" per line.
void write_oracle_misses(std::ostream& out, const std::vector<OracleMiss>& misses);
std::vector<OracleMiss> parse_oracle_misses(std::istream& in);

// Writes every file of a generated sequence, disparity maps included.
void write_synth_sequence(const std::filesystem::path& seq_dir,
                          const SynthSequence& seq);

}  // namespace fnmine
