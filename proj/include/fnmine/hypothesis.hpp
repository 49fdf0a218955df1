#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fnmine/features.hpp"
#include "fnmine/geometry.hpp"

namespace fnmine {

enum class Cue { Temporal, Stereo };

std::string_view to_string(Cue cue);
// Throws std::invalid_argument on unknown names.
Cue cue_from_string(std::string_view name);

// A candidate missed object proposed by one cue.
struct Hypothesis {
  BBox box;
  double confidence = 0.0;
  Cue cue = Cue::Temporal;
  int frame = 0;
  // Track length for temporal hypotheses, 0 for stereo.
  int track_length = 0;
  // Track id (temporal) or right-camera detection index (stereo).
  int source_id = -1;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

enum class Label { Invalid = 0, ValidError = 1 };

// One row of the hypotheses table: the hypothesis, its features, and the
// optional ground-truth label and classifier score.
struct HypothesisRecord {
  std::string sequence;
  Hypothesis hyp;
  FeatureVector features;
  std::optional<Label> label;
  std::optional<double> score;

  friend bool operator==(const HypothesisRecord&,
                         const HypothesisRecord&) = default;
};

// Canonical provenance order: sequence, frame, box, cue, source.
bool provenance_less(const HypothesisRecord& a, const HypothesisRecord& b);

}  // namespace fnmine
