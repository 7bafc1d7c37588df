#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uzopinion/features.hpp"
#include "uzopinion/post.hpp"

namespace uzopinion {

enum class Algorithm : std::uint8_t { knn, bayes, reptree, random_forest };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_string(std::string_view s);

/// Algorithm choice plus explicit hyperparameters. Every tunable is a named
/// entry in `params`; nothing is hidden behind wall-clock or global state.
struct ClassifierSpec {
  Algorithm algorithm = Algorithm::knn;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

/// Builds a spec, rejecting unknown parameter names and out-of-range values.
///
/// Known parameters and defaults:
///   knn:            k = 1
///   bayes:          bins = 10, alpha = 0.5
///   reptree:        min_leaf = 2
///   random_forest:  trees = 100, features_per_split = 0 (auto: floor(log2 M) + 1),
///                   min_leaf = 1
ClassifierSpec make_spec(Algorithm algorithm,
                         std::map<std::string, double> params = {},
                         std::uint64_t seed = 0);
void validate_spec(const ClassifierSpec& spec);
double resolved_param(const ClassifierSpec& spec, std::string_view name);

/// Per-feature range scaling fitted on training data. apply() maps into
/// [0, 1], clamping out-of-range values; a constant feature maps to 0.
struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> max;

  static MinMaxScaler fit(const std::vector<const std::vector<double>*>& rows);
  std::vector<double> apply(const std::vector<double>& values) const;
};

/// Binary decision tree; axis-aligned thresholds, `x[feature] < threshold`
/// goes left.
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  Label label = Label::negative;
  std::array<std::uint32_t, kNumClasses> counts{};
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  Label predict(const std::vector<double>& values) const;
  std::size_t node_count() const { return nodes.size(); }
};

struct KnnState {
  std::size_t k = 1;
  std::vector<std::vector<double>> instances;  // min-max normalized
  std::vector<Label> labels;
};

struct BayesState {
  double alpha = 0.5;
  std::vector<std::vector<double>> bin_edges;  // per feature, ascending inner edges
  std::array<double, kNumClasses> log_prior{};
  // log P(bin | class), indexed [feature][class][bin]
  std::vector<std::array<std::vector<double>, kNumClasses>> log_cond;
};

struct ReptreeState {
  Tree tree;
  std::size_t unpruned_nodes = 0;
  double prune_set_accuracy_unpruned = 0.0;
  double prune_set_accuracy_pruned = 0.0;
};

struct ForestState {
  std::vector<Tree> trees;
  std::size_t features_per_split = 0;  // resolved value actually used
};

struct TrainedModel {
  ClassifierSpec spec;
  FeatureSchema schema;
  MinMaxScaler normalization;
  Label majority = Label::negative;  // training majority, breaks prediction ties
  std::variant<KnnState, BayesState, ReptreeState, ForestState> state;
};

struct Prediction {
  Label label;
  std::array<double, kNumClasses> scores{};  // indexed negative, positive
};

/// Trains a model. Requires at least two instances, both classes present,
/// a consistent schema across rows and finite feature values.
TrainedModel train(const ClassifierSpec& spec, const Dataset& data);

/// Deterministic prediction. Rejects vectors whose schema differs from the
/// training schema, naming the first differing feature.
Prediction predict(const TrainedModel& model, const FeatureVector& v);

/// Versioned, self-describing JSON model files.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text, std::string_view source_name);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace uzopinion
