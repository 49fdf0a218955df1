#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fnmine/io.hpp"
#include "text_util.hpp"

namespace fnmine {

namespace {

constexpr std::string_view kMagic = "fnmine-forest";

// Reads the next non-blank line and checks its leading keyword.
std::vector<std::string_view> expect_line(detail::LineReader& reader,
                                          std::string& storage,
                                          std::string_view keyword) {
  while (reader.next(storage)) {
    if (detail::blank(storage)) continue;
    auto tok = detail::split_ws(storage);
    if (tok.front() != keyword) {
      throw ModelError("model line " + std::to_string(reader.number()) +
                       ": expected '" + std::string(keyword) + "', found '" +
                       std::string(tok.front()) + "'");
    }
    return tok;
  }
  throw ModelError("model document ends before '" + std::string(keyword) + "'");
}

template <typename T, typename Conv>
T single_value(detail::LineReader& reader, std::string& storage,
               std::string_view keyword, Conv conv) {
  const auto tok = expect_line(reader, storage, keyword);
  if (tok.size() != 2) {
    throw ModelError("model line " + std::to_string(reader.number()) +
                     ": expected one value after '" + std::string(keyword) + "'");
  }
  try {
    return conv(tok[1], reader.number(), keyword);
  } catch (const ParseError& e) {
    throw ModelError(std::string("model ") + e.what());
  }
}

std::uint64_t to_u64(std::string_view tok, std::size_t line,
                     std::string_view what) {
  std::uint64_t v = 0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "field '" + std::string(what) +
                               "' is not an unsigned integer");
  }
  return v;
}

}  // namespace

void write_model(std::ostream& out, const ForestModel& model) {
  out << kMagic << ' ' << kModelFormatVersion << '\n';
  out << "cue " << to_string(model.cue) << '\n';
  out << "feature_count " << model.feature_count << '\n';
  out << "features";
  for (std::size_t i = 0; i < model.feature_count && i < kFeatureNames.size();
       ++i) {
    out << ' ' << kFeatureNames[i];
  }
  out << '\n';
  out << "seed " << model.params.seed << '\n';
  out << "n_trees " << model.params.n_trees << '\n';
  out << "max_features " << model.params.max_features << '\n';
  out << "min_samples_split " << model.params.min_samples_split << '\n';
  out << "samples " << model.n_samples << '\n';
  out << "positives " << model.n_positive << '\n';
  out << "degenerate " << (model.degenerate ? 1 : 0) << '\n';
  out << "trees " << model.trees.size() << '\n';
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const DecisionTree& tree = model.trees[t];
    out << "tree " << t << ' ' << tree.nodes.size() << '\n';
    for (const TreeNode& n : tree.nodes) {
      out << "node " << n.feature << ' ' << format_double(n.threshold) << ' '
          << n.left << ' ' << n.right << ' ' << format_double(n.probability)
          << ' ' << format_double(n.gain) << '\n';
    }
  }
  out << "end\n";
}

ForestModel read_model(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;

  const auto head = expect_line(reader, line, kMagic);
  if (head.size() != 2 || head[1] != std::to_string(kModelFormatVersion)) {
    throw ModelError("unsupported model format version (expected " +
                     std::to_string(kModelFormatVersion) + ")");
  }

  ForestModel model;
  {
    const auto tok = expect_line(reader, line, "cue");
    if (tok.size() != 2) throw ModelError("model: malformed cue line");
    try {
      model.cue = cue_from_string(tok[1]);
    } catch (const std::invalid_argument& e) {
      throw ModelError(std::string("model: ") + e.what());
    }
  }
  model.feature_count = static_cast<std::size_t>(
      single_value<std::uint64_t>(reader, line, "feature_count", to_u64));
  if (model.feature_count == 0 || model.feature_count > kFeatureCount) {
    throw ModelError("model: feature_count must be in [1, " +
                     std::to_string(kFeatureCount) + "]");
  }
  {
    const auto tok = expect_line(reader, line, "features");
    if (tok.size() != model.feature_count + 1) {
      throw ModelError("model: feature header has " +
                       std::to_string(tok.size() - 1) + " names, expected " +
                       std::to_string(model.feature_count));
    }
    for (std::size_t i = 0; i < model.feature_count; ++i) {
      if (tok[i + 1] != kFeatureNames[i]) {
        throw ModelError("model: feature column " + std::to_string(i) + " is '" +
                         std::string(tok[i + 1]) + "', expected '" +
                         std::string(kFeatureNames[i]) + "'");
      }
    }
  }
  model.params.seed = single_value<std::uint64_t>(reader, line, "seed", to_u64);
  model.params.n_trees = single_value<int>(reader, line, "n_trees", detail::to_int);
  model.params.max_features =
      single_value<int>(reader, line, "max_features", detail::to_int);
  model.params.min_samples_split =
      single_value<int>(reader, line, "min_samples_split", detail::to_int);
  model.n_samples = static_cast<std::size_t>(
      single_value<std::uint64_t>(reader, line, "samples", to_u64));
  model.n_positive = static_cast<std::size_t>(
      single_value<std::uint64_t>(reader, line, "positives", to_u64));
  model.degenerate =
      single_value<int>(reader, line, "degenerate", detail::to_int) != 0;
  const auto n_trees = static_cast<std::size_t>(
      single_value<std::uint64_t>(reader, line, "trees", to_u64));
  if (n_trees == 0) throw ModelError("model: no trees");

  model.trees.resize(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    const auto tok = expect_line(reader, line, "tree");
    const std::size_t ln = reader.number();
    std::size_t n_nodes = 0;
    try {
      if (tok.size() != 3 || detail::to_int(tok[1], ln, "tree index") !=
                                 static_cast<int>(t)) {
        throw ModelError("model line " + std::to_string(ln) +
                         ": expected 'tree " + std::to_string(t) + " <nodes>'");
      }
      n_nodes = static_cast<std::size_t>(to_u64(tok[2], ln, "node count"));
    } catch (const ParseError& e) {
      throw ModelError(std::string("model ") + e.what());
    }
    if (n_nodes == 0) throw ModelError("model: tree " + std::to_string(t) + " is empty");

    auto& nodes = model.trees[t].nodes;
    nodes.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const auto nt = expect_line(reader, line, "node");
      const std::size_t nl = reader.number();
      if (nt.size() != 7) {
        throw ModelError("model line " + std::to_string(nl) +
                         ": node needs 6 values");
      }
      TreeNode& n = nodes[i];
      try {
        n.feature = detail::to_int(nt[1], nl, "feature_index");
        n.threshold = detail::to_double(nt[2], nl, "threshold");
        n.left = detail::to_int(nt[3], nl, "left_child");
        n.right = detail::to_int(nt[4], nl, "right_child");
        n.probability = detail::to_double(nt[5], nl, "leaf_probability");
        n.gain = detail::to_double(nt[6], nl, "gain");
      } catch (const ParseError& e) {
        throw ModelError(std::string("model ") + e.what());
      }

      const std::string where = "model line " + std::to_string(nl) + ": ";
      if (n.probability < 0.0 || n.probability > 1.0) {
        throw ModelError(where + "leaf probability outside [0,1]");
      }
      if (n.feature < 0) {
        if (n.left != -1 || n.right != -1) {
          throw ModelError(where + "leaf node with children");
        }
        continue;
      }
      if (static_cast<std::size_t>(n.feature) >= model.feature_count) {
        throw ModelError(where + "feature_index " + std::to_string(n.feature) +
                         " out of range for a " +
                         std::to_string(model.feature_count) + "-feature model");
      }
      // Pre-order layout: children come after their parent, which also rules
      // out cycles.
      const auto in_range = [&](int c) {
        return c > static_cast<int>(i) && c < static_cast<int>(n_nodes);
      };
      if (!in_range(n.left) || !in_range(n.right) || n.left == n.right) {
        throw ModelError(where + "dangling child index");
      }
    }
  }
  expect_line(reader, line, "end");
  return model;
}

}  // namespace fnmine
