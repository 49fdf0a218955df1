#include <istream>
#include <ostream>
#include <string>

#include "fnmine/io.hpp"
#include "text_util.hpp"

namespace fnmine {

namespace {

constexpr std::array<std::string_view, 9> kTrailingColumns{
    "cue", "frame", "x1", "y1", "x2", "y2", "source", "label", "score"};

}  // namespace

std::string hypotheses_csv_header() {
  std::string header;
  for (std::string_view name : kFeatureNames) {
    header += name;
    header += ',';
  }
  for (std::size_t i = 0; i < kTrailingColumns.size(); ++i) {
    if (i > 0) header += ',';
    header += kTrailingColumns[i];
  }
  return header;
}

void write_hypotheses_csv(std::ostream& out,
                          std::span<const HypothesisRecord> records) {
  out << hypotheses_csv_header() << '\n';
  for (const HypothesisRecord& rec : records) {
    for (double v : rec.features.to_array()) out << format_double(v) << ',';
    const Hypothesis& h = rec.hyp;
    out << to_string(h.cue) << ',' << h.frame << ',' << format_double(h.box.x1)
        << ',' << format_double(h.box.y1) << ',' << format_double(h.box.x2)
        << ',' << format_double(h.box.y2) << ',' << h.source_id << ',';
    if (rec.label) out << static_cast<int>(*rec.label);
    out << ',';
    if (rec.score) out << format_double(*rec.score);
    out << '\n';
  }
}

std::vector<HypothesisRecord> read_hypotheses_csv(std::istream& in,
                                                  const std::string& sequence) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(1, "missing header row");

  const auto header = detail::split_char(detail::trim(line), ',');
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (i >= header.size() || detail::trim(header[i]) != kFeatureNames[i]) {
      throw ParseError(1, "feature columns do not match the expected order "
                          "starting at column " + std::to_string(i + 1) +
                          " (expected '" + std::string(kFeatureNames[i]) + "')");
    }
  }
  if (detail::trim(line) != hypotheses_csv_header()) {
    throw ParseError(1, "unexpected hypotheses header; expected '" +
                            hypotheses_csv_header() + "'");
  }

  const std::size_t n_cols = kFeatureNames.size() + kTrailingColumns.size();
  std::vector<HypothesisRecord> out;
  while (reader.next(line)) {
    if (detail::blank(line)) continue;
    const std::size_t ln = reader.number();
    const auto tok = detail::split_char(detail::trim(line), ',');
    if (tok.size() != n_cols) {
      throw ParseError(ln, "expected " + std::to_string(n_cols) +
                               " columns, found " + std::to_string(tok.size()));
    }
    HypothesisRecord rec;
    rec.sequence = sequence;
    std::array<double, kFeatureCount> f{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      f[i] = detail::to_double(tok[i], ln, kFeatureNames[i]);
    }
    rec.features = FeatureVector::from_array(f);

    std::size_t c = kFeatureCount;
    try {
      rec.hyp.cue = cue_from_string(tok[c++]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, e.what());
    }
    rec.hyp.frame = detail::to_int(tok[c++], ln, "frame");
    const double x1 = detail::to_double(tok[c++], ln, "x1");
    const double y1 = detail::to_double(tok[c++], ln, "y1");
    const double x2 = detail::to_double(tok[c++], ln, "x2");
    const double y2 = detail::to_double(tok[c++], ln, "y2");
    rec.hyp.box = detail::checked_box(x1, y1, x2, y2, ln);
    rec.hyp.source_id = detail::to_int(tok[c++], ln, "source");

    const std::string_view label = tok[c++];
    if (label == "1") {
      rec.label = Label::ValidError;
    } else if (label == "0") {
      rec.label = Label::Invalid;
    } else if (!label.empty()) {
      throw ParseError(ln, "label must be 0, 1 or empty");
    }
    const std::string_view score = tok[c++];
    if (!score.empty()) {
      rec.score = detail::to_double(score, ln, "score");
      if (*rec.score < 0.0 || *rec.score > 1.0) {
        throw ParseError(ln, "score out of range [0,1]");
      }
    }

    rec.hyp.confidence = rec.features.r;
    if (rec.hyp.confidence < 0.0 || rec.hyp.confidence > 1.0) {
      throw ParseError(ln, "confidence r out of range [0,1]");
    }
    rec.hyp.track_length = static_cast<int>(rec.features.n);
    if (static_cast<double>(rec.hyp.track_length) != rec.features.n ||
        rec.features.n < 0.0) {
      throw ParseError(ln, "track length n must be a non-negative integer");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace fnmine
