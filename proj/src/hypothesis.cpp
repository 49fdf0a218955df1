#include "fnmine/hypothesis.hpp"

#include <stdexcept>
#include <tuple>

namespace fnmine {

std::string_view to_string(Cue cue) {
  return cue == Cue::Temporal ? "temporal" : "stereo";
}

Cue cue_from_string(std::string_view name) {
  if (name == "temporal") return Cue::Temporal;
  if (name == "stereo") return Cue::Stereo;
  throw std::invalid_argument("unknown cue '" + std::string(name) + "'");
}

bool provenance_less(const HypothesisRecord& a, const HypothesisRecord& b) {
  return std::tie(a.sequence, a.hyp.frame, a.hyp.box, a.hyp.cue,
                  a.hyp.source_id) < std::tie(b.sequence, b.hyp.frame,
                                              b.hyp.box, b.hyp.cue,
                                              b.hyp.source_id);
}

}  // namespace fnmine
