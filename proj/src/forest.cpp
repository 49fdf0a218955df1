#include "fnmine/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace fnmine {

namespace {

double gini(double positives, double total) {
  if (total <= 0.0) return 0.0;
  const double p = positives / total;
  return 2.0 * p * (1.0 - p);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = -1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& data, const ForestParams& params,
              std::mt19937_64& rng)
      : data_(data), params_(params), rng_(rng) {
    const auto d = static_cast<int>(data.feature_count);
    max_features_ = params.max_features > 0
                        ? std::min(params.max_features, d)
                        : static_cast<int>(std::ceil(std::sqrt(d)));
  }

  DecisionTree build(std::vector<std::size_t> samples) {
    grow(std::move(samples));
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> samples) {
    const auto total = static_cast<double>(samples.size());
    double positives = 0.0;
    for (std::size_t s : samples) positives += data_.labels[s];

    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes[index].probability = total > 0.0 ? positives / total : 0.0;

    const bool pure = positives == 0.0 || positives == total;
    if (pure || samples.size() < static_cast<std::size_t>(
                                     std::max(2, params_.min_samples_split))) {
      return index;
    }

    const Split split = best_split(samples, positives);
    if (split.feature < 0) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t s : samples) {
      const double v = data_.values[s * data_.feature_count +
                                    static_cast<std::size_t>(split.feature)];
      (v <= split.threshold ? left : right).push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();

    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    TreeNode& node = tree_.nodes[index];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.gain = split.gain;
    node.left = l;
    node.right = r;
    return index;
  }

  Split best_split(const std::vector<std::size_t>& samples, double positives) {
    const std::size_t d = data_.feature_count;
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng_);

    const auto total = static_cast<double>(samples.size());
    const double parent = total * gini(positives, total);

    Split best;
    int tried = 0;
    std::vector<std::pair<double, int>> column(samples.size());
    for (int f : order) {
      if (tried >= max_features_) break;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        column[i] = {data_.values[samples[i] * d + static_cast<std::size_t>(f)],
                     data_.labels[samples[i]]};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++tried;

      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_pos += column[i].second;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        const auto n_left = static_cast<double>(i + 1);
        const double n_right = total - n_left;
        const double child = n_left * gini(left_pos, n_left) +
                             n_right * gini(positives - left_pos, n_right);
        const double gain = parent - child;
        if (gain > best.gain) {
          double mid = lo + 0.5 * (hi - lo);
          if (!(mid < hi)) mid = lo;
          best = {f, mid, gain};
        }
      }
    }
    if (best.feature >= 0) best.gain = std::max(best.gain, 0.0);
    return best;
  }

  const TrainingSet& data_;
  const ForestParams& params_;
  std::mt19937_64& rng_;
  int max_features_ = 1;
  DecisionTree tree_;
};

}  // namespace

void TrainingSet::add(std::span<const double> features, int label) {
  if (features.size() != feature_count) {
    throw ModelError("training row has " + std::to_string(features.size()) +
                     " features, expected " + std::to_string(feature_count));
  }
  values.insert(values.end(), features.begin(), features.end());
  labels.push_back(label != 0 ? 1 : 0);
}

double DecisionTree::predict(std::span<const double> features) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = static_cast<std::size_t>(
        features[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                     : n.right);
  }
  return nodes[i].probability;
}

DecisionTree train_tree(const TrainingSet& data,
                        std::span<const std::size_t> samples,
                        const ForestParams& params, std::mt19937_64& rng) {
  TreeBuilder builder(data, params, rng);
  return builder.build({samples.begin(), samples.end()});
}

ForestModel train_forest(const TrainingSet& data, Cue cue,
                         const ForestParams& params) {
  if (data.size() == 0) throw ModelError("cannot train on an empty set");
  if (params.n_trees < 1) throw ModelError("n_trees must be >= 1");

  ForestModel model;
  model.cue = cue;
  model.feature_count = data.feature_count;
  model.params = params;
  model.n_samples = data.size();
  model.n_positive = static_cast<std::size_t>(
      std::count(data.labels.begin(), data.labels.end(), 1));

  if (model.n_positive == 0 || model.n_positive == model.n_samples) {
    model.degenerate = true;
    TreeNode leaf;
    leaf.probability = model.n_positive == 0 ? 0.0 : 1.0;
    model.trees.push_back({{leaf}});
    return model;
  }

  const std::size_t n = data.size();
  model.trees.reserve(static_cast<std::size_t>(params.n_trees));
  for (int t = 0; t < params.n_trees; ++t) {
    std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> bag(n);
    for (auto& s : bag) s = pick(rng);
    model.trees.push_back(train_tree(data, bag, params, rng));
  }
  return model;
}

double predict(const ForestModel& model, std::span<const double> features) {
  if (features.size() != model.feature_count) {
    throw ModelError("feature vector has " + std::to_string(features.size()) +
                     " components, model expects " +
                     std::to_string(model.feature_count));
  }
  if (model.trees.empty()) throw ModelError("model has no trees");
  double sum = 0.0;
  for (const DecisionTree& t : model.trees) sum += t.predict(features);
  return std::clamp(sum / static_cast<double>(model.trees.size()), 0.0, 1.0);
}

FeatureImportances feature_importances(const ForestModel& model) {
  const std::size_t d = model.feature_count;
  FeatureImportances out;
  out.weights.assign(d, 0.0);
  for (const DecisionTree& tree : model.trees) {
    std::vector<double> per_tree(d, 0.0);
    double total = 0.0;
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) continue;
      per_tree[static_cast<std::size_t>(node.feature)] += node.gain;
      total += node.gain;
    }
    if (total <= 0.0) continue;
    for (std::size_t f = 0; f < d; ++f) out.weights[f] += per_tree[f] / total;
  }
  const double sum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  if (sum <= 0.0) {
    out.degenerate = true;
    if (d > 0) out.weights.assign(d, 1.0 / static_cast<double>(d));
    return out;
  }
  for (double& w : out.weights) w /= sum;
  return out;
}

std::size_t feature_count_for(Cue cue) {
  return cue == Cue::Temporal ? kFeatureCount : kStereoFeatureCount;
}

std::vector<double> model_inputs(const FeatureVector& f, Cue cue) {
  const auto all = f.to_array();
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(
                                         feature_count_for(cue))};
}

}  // namespace fnmine
