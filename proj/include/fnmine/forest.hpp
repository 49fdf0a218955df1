#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnmine/hypothesis.hpp"

namespace fnmine {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreeNode {
  // -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Positive fraction of the training samples that reached this node.
  double probability = 0.0;
  // Weighted Gini decrease of this node's split, 0 for leaves.
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Binary tree in pre-order; children always have larger indices than their
// parent. Samples with value <= threshold go left.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> features) const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestParams {
  int n_trees = 30;
  // 0 selects ceil(sqrt(feature_count)).
  int max_features = 0;
  int min_samples_split = 2;
  std::uint64_t seed = 0;

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

struct ForestModel {
  Cue cue = Cue::Temporal;
  std::size_t feature_count = 0;
  ForestParams params;
  std::size_t n_samples = 0;
  std::size_t n_positive = 0;
  // Set when training saw a single class; the model is one constant leaf.
  bool degenerate = false;
  std::vector<DecisionTree> trees;

  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

// Row-major feature matrix with binary labels.
struct TrainingSet {
  std::size_t feature_count = 0;
  std::vector<double> values;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * feature_count, feature_count};
  }
  void add(std::span<const double> features, int label);
};

// Grows one unpruned tree on the given sample indices (duplicates allowed).
// Each node draws a random feature order and evaluates features until
// max_features non-constant ones have been tried.
DecisionTree train_tree(const TrainingSet& data,
                        std::span<const std::size_t> samples,
                        const ForestParams& params, std::mt19937_64& rng);

// Bagged forest; tree t uses a generator seeded with params.seed + t.
// Throws ModelError on an empty set. A single-class set yields a degenerate
// one-leaf model.
ForestModel train_forest(const TrainingSet& data, Cue cue,
                         const ForestParams& params);

// Mean of per-tree leaf probabilities. Throws ModelError when the feature
// count differs from the model's.
double predict(const ForestModel& model, std::span<const double> features);

struct FeatureImportances {
  std::vector<double> weights;
  // No tree has a split; weights are uniform.
  bool degenerate = false;
};

// Mean decrease in Gini impurity per feature, normalized to sum to 1.
FeatureImportances feature_importances(const ForestModel& model);

// The feature columns a cue's model consumes: all 12 for temporal, the first
// 11 for stereo.
std::size_t feature_count_for(Cue cue);
std::vector<double> model_inputs(const FeatureVector& f, Cue cue);

}  // namespace fnmine
