#include "uzopinion/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uzopinion/error.hpp"
#include "uzopinion/rng.hpp"

namespace uzopinion {

namespace {

using json = nlohmann::json;

const std::map<std::string, double>& known_params(Algorithm algorithm) {
  static const std::map<std::string, double> knn{{"k", 1.0}};
  static const std::map<std::string, double> bayes{{"bins", 10.0}, {"alpha", 0.5}};
  static const std::map<std::string, double> reptree{{"min_leaf", 2.0}};
  static const std::map<std::string, double> forest{
      {"trees", 100.0}, {"features_per_split", 0.0}, {"min_leaf", 1.0}};
  switch (algorithm) {
    case Algorithm::knn: return knn;
    case Algorithm::bayes: return bayes;
    case Algorithm::reptree: return reptree;
    case Algorithm::random_forest: return forest;
  }
  return knn;
}

std::size_t positive_int_param(const ClassifierSpec& spec, std::string_view name) {
  const double v = resolved_param(spec, name);
  if (!(v >= 1.0) || v != std::floor(v))
    throw Error("parameter '" + std::string(name) + "' must be a positive integer");
  return static_cast<std::size_t>(v);
}

Label majority_label(const std::array<std::size_t, kNumClasses>& counts) {
  // ties go to the lowest class index
  return counts[1] > counts[0] ? Label::positive : Label::negative;
}

Label argmax_label(const std::array<double, kNumClasses>& scores, Label tie_break) {
  if (scores[0] > scores[1]) return Label::negative;
  if (scores[1] > scores[0]) return Label::positive;
  return tie_break;
}

double entropy(double c0, double c1) {
  const double n = c0 + c1;
  if (n <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : {c0, c1}) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// tree growth, shared by the pruned tree and the forest

struct GrowConfig {
  std::size_t min_leaf = 1;
  std::size_t features_per_split = 0;  // 0 = consider every feature
  Label majority = Label::negative;
};

class TreeGrower {
 public:
  TreeGrower(const std::vector<std::vector<double>>& x, const std::vector<Label>& y,
             GrowConfig cfg, Rng* rng)
      : x_(x), y_(y), cfg_(cfg), rng_(rng) {}

  Tree grow(std::vector<std::size_t> indices) {
    tree_.nodes.clear();
    grow_node(indices);
    return std::move(tree_);
  }

 private:
  struct Split {
    std::int32_t feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  std::array<std::uint32_t, kNumClasses> class_counts(
      const std::vector<std::size_t>& idx) const {
    std::array<std::uint32_t, kNumClasses> c{};
    for (std::size_t i : idx) ++c[static_cast<std::size_t>(y_[i])];
    return c;
  }

  std::vector<std::size_t> candidate_features() const {
    const std::size_t m = x_.front().size();
    std::vector<std::size_t> all(m);
    for (std::size_t f = 0; f < m; ++f) all[f] = f;
    if (cfg_.features_per_split == 0 || cfg_.features_per_split >= m || !rng_)
      return all;
    // partial Fisher-Yates, then ascending for a deterministic scan order
    for (std::size_t i = 0; i < cfg_.features_per_split; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng_->next_below(m - i));
      std::swap(all[i], all[j]);
    }
    all.resize(cfg_.features_per_split);
    std::sort(all.begin(), all.end());
    return all;
  }

  Split best_split(const std::vector<std::size_t>& idx,
                   const std::array<std::uint32_t, kNumClasses>& total) const {
    Split best;
    const double n = static_cast<double>(idx.size());
    const double h_parent = entropy(total[0], total[1]);
    std::vector<std::size_t> order(idx);
    for (std::size_t f : candidate_features()) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x_[a][f] != x_[b][f]) return x_[a][f] < x_[b][f];
        return a < b;
      });
      std::array<double, kNumClasses> left{};
      for (std::size_t i = 1; i < order.size(); ++i) {
        ++left[static_cast<std::size_t>(y_[order[i - 1]])];
        const double prev = x_[order[i - 1]][f];
        const double cur = x_[order[i]][f];
        if (cur == prev) continue;
        if (i < cfg_.min_leaf || order.size() - i < cfg_.min_leaf) continue;
        const double nl = static_cast<double>(i);
        const double nr = n - nl;
        const double h =
            (nl * entropy(left[0], left[1]) +
             nr * entropy(total[0] - left[0], total[1] - left[1])) /
            n;
        const double gain = h_parent - h;
        if (gain > best.gain + 1e-12) {
          best.feature = static_cast<std::int32_t>(f);
          best.threshold = prev + (cur - prev) / 2.0;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  std::int32_t grow_node(const std::vector<std::size_t>& idx) {
    const auto counts = class_counts(idx);
    const auto node_index = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    {
      auto& node = tree_.nodes.back();
      node.counts = counts;
      std::array<double, kNumClasses> as_scores{static_cast<double>(counts[0]),
                                                static_cast<double>(counts[1])};
      node.label = argmax_label(as_scores, cfg_.majority);
    }
    const bool pure = counts[0] == 0 || counts[1] == 0;
    if (pure || idx.size() < 2 * cfg_.min_leaf || idx.size() < 2)
      return node_index;
    const Split split = best_split(idx, counts);
    if (split.feature < 0) return node_index;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (x_[i][static_cast<std::size_t>(split.feature)] < split.threshold ? left_idx
                                                                        : right_idx)
          .push_back(i);
    }
    tree_.nodes[static_cast<std::size_t>(node_index)].feature = split.feature;
    tree_.nodes[static_cast<std::size_t>(node_index)].threshold = split.threshold;
    const std::int32_t left = grow_node(left_idx);
    tree_.nodes[static_cast<std::size_t>(node_index)].left = left;
    const std::int32_t right = grow_node(right_idx);
    tree_.nodes[static_cast<std::size_t>(node_index)].right = right;
    return node_index;
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<Label>& y_;
  GrowConfig cfg_;
  Rng* rng_;
  Tree tree_;
};

// ---------------------------------------------------------------------------
// reduced-error pruning with leaf back-fitting

struct PruneWork {
  std::vector<std::array<std::uint32_t, kNumClasses>> counts;  // hold-out per node
};

void route_prune_instance(const Tree& tree, PruneWork& work,
                          const std::vector<double>& x, Label y) {
  std::int32_t at = 0;
  while (true) {
    ++work.counts[static_cast<std::size_t>(at)][static_cast<std::size_t>(y)];
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
    if (node.feature < 0) return;
    at = x[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                    : node.right;
  }
}

// returns the subtree's hold-out error after pruning decisions below `at`
std::size_t prune_node(Tree& tree, const PruneWork& work, std::int32_t at,
                       Label majority) {
  TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
  const auto& prune_counts = work.counts[static_cast<std::size_t>(at)];
  // back-fit label: grown counts plus hold-out counts, ties keep the grown label
  std::array<double, kNumClasses> combined{
      static_cast<double>(node.counts[0]) + static_cast<double>(prune_counts[0]),
      static_cast<double>(node.counts[1]) + static_cast<double>(prune_counts[1])};
  const Label backfit = argmax_label(combined, node.label);
  const std::size_t prune_total = prune_counts[0] + prune_counts[1];
  const std::size_t leaf_error =
      prune_total - prune_counts[static_cast<std::size_t>(backfit)];
  if (node.feature < 0) {
    node.label = backfit;
    return leaf_error;
  }
  const std::size_t subtree_error = prune_node(tree, work, node.left, majority) +
                                    prune_node(tree, work, node.right, majority);
  if (leaf_error <= subtree_error) {
    node.feature = -1;
    node.left = node.right = -1;
    node.label = backfit;
    return leaf_error;
  }
  return subtree_error;
}

// drops nodes made unreachable by pruning
Tree compact(const Tree& tree) {
  Tree out;
  out.nodes.push_back(tree.nodes[0]);
  struct Item {
    std::int32_t old_index;
    std::int32_t new_index;
  };
  std::vector<Item> todo{{0, 0}};
  while (!todo.empty()) {
    const Item item = todo.back();
    todo.pop_back();
    const TreeNode& old_node = tree.nodes[static_cast<std::size_t>(item.old_index)];
    if (old_node.feature < 0) continue;
    const auto left_new = static_cast<std::int32_t>(out.nodes.size());
    out.nodes.push_back(tree.nodes[static_cast<std::size_t>(old_node.left)]);
    const auto right_new = static_cast<std::int32_t>(out.nodes.size());
    out.nodes.push_back(tree.nodes[static_cast<std::size_t>(old_node.right)]);
    out.nodes[static_cast<std::size_t>(item.new_index)].left = left_new;
    out.nodes[static_cast<std::size_t>(item.new_index)].right = right_new;
    todo.push_back({old_node.left, left_new});
    todo.push_back({old_node.right, right_new});
  }
  return out;
}

double prune_set_accuracy(const Tree& tree, const std::vector<std::vector<double>>& x,
                          const std::vector<Label>& y,
                          const std::vector<std::size_t>& prune_idx) {
  if (prune_idx.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i : prune_idx)
    if (tree.predict(x[i]) == y[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(prune_idx.size());
}

// ---------------------------------------------------------------------------
// per-algorithm training

KnnState train_knn(const std::vector<std::vector<double>>& x,
                   const std::vector<Label>& y, const ClassifierSpec& spec,
                   const MinMaxScaler& scaler) {
  KnnState state;
  state.k = positive_int_param(spec, "k");
  if (state.k > x.size())
    throw Error("knn: k (" + std::to_string(state.k) +
                ") exceeds the number of training instances (" +
                std::to_string(x.size()) + ")");
  state.instances.reserve(x.size());
  for (const auto& row : x) state.instances.push_back(scaler.apply(row));
  state.labels = y;
  return state;
}

BayesState train_bayes(const std::vector<std::vector<double>>& x,
                       const std::vector<Label>& y, const ClassifierSpec& spec) {
  BayesState state;
  state.alpha = resolved_param(spec, "alpha");
  if (!(state.alpha > 0.0)) throw Error("bayes: alpha must be > 0");
  const std::size_t bins = positive_int_param(spec, "bins");
  if (bins < 2) throw Error("bayes: bins must be >= 2");

  const std::size_t n = x.size();
  const std::size_t m = x.front().size();
  std::array<std::size_t, kNumClasses> class_n{};
  for (Label l : y) ++class_n[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    state.log_prior[c] =
        std::log((static_cast<double>(class_n[c]) + state.alpha) /
                 (static_cast<double>(n) + state.alpha * kNumClasses));
  }

  state.bin_edges.resize(m);
  state.log_cond.resize(m);
  for (std::size_t f = 0; f < m; ++f) {
    std::vector<double> sorted;
    sorted.reserve(n);
    for (const auto& row : x) sorted.push_back(row[f]);
    std::sort(sorted.begin(), sorted.end());
    auto& edges = state.bin_edges[f];
    for (std::size_t i = 1; i < bins; ++i) {
      const std::size_t k = i * n / bins;
      if (k == 0 || k >= n) continue;
      if (sorted[k - 1] == sorted[k]) continue;
      const double edge = sorted[k - 1] + (sorted[k] - sorted[k - 1]) / 2.0;
      if (edges.empty() || edge > edges.back()) edges.push_back(edge);
    }
    const std::size_t n_bins = edges.size() + 1;
    std::array<std::vector<double>, kNumClasses> counts;
    for (auto& c : counts) c.assign(n_bins, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto bin = static_cast<std::size_t>(
          std::upper_bound(edges.begin(), edges.end(), x[i][f]) - edges.begin());
      counts[static_cast<std::size_t>(y[i])][bin] += 1.0;
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      auto& lc = state.log_cond[f][c];
      lc.resize(n_bins);
      const double denom =
          static_cast<double>(class_n[c]) + state.alpha * static_cast<double>(n_bins);
      for (std::size_t b = 0; b < n_bins; ++b)
        lc[b] = std::log((counts[c][b] + state.alpha) / denom);
    }
  }
  return state;
}

ReptreeState train_reptree(const std::vector<std::vector<double>>& x,
                           const std::vector<Label>& y, const ClassifierSpec& spec,
                           Label majority) {
  ReptreeState state;
  const std::size_t min_leaf = positive_int_param(spec, "min_leaf");

  // seeded stratified split: two thirds grow the tree, one third prunes it
  Rng rng(spec.seed);
  std::vector<std::size_t> grow_idx, prune_idx;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (static_cast<std::size_t>(y[i]) == c) members.push_back(i);
    rng.shuffle(members);
    const std::size_t grow_n = (members.size() * 2 + 2) / 3;  // ceil(2n/3)
    for (std::size_t i = 0; i < members.size(); ++i)
      (i < grow_n ? grow_idx : prune_idx).push_back(members[i]);
  }
  std::sort(grow_idx.begin(), grow_idx.end());
  std::sort(prune_idx.begin(), prune_idx.end());

  TreeGrower grower(x, y, GrowConfig{min_leaf, 0, majority}, nullptr);
  Tree tree = grower.grow(grow_idx);
  state.unpruned_nodes = tree.node_count();
  state.prune_set_accuracy_unpruned = prune_set_accuracy(tree, x, y, prune_idx);

  if (!prune_idx.empty()) {
    PruneWork work;
    work.counts.assign(tree.nodes.size(), {});
    for (std::size_t i : prune_idx) route_prune_instance(tree, work, x[i], y[i]);
    prune_node(tree, work, 0, majority);
    tree = compact(tree);
  }
  state.prune_set_accuracy_pruned = prune_set_accuracy(tree, x, y, prune_idx);
  state.tree = std::move(tree);
  return state;
}

ForestState train_forest(const std::vector<std::vector<double>>& x,
                         const std::vector<Label>& y, const ClassifierSpec& spec,
                         Label majority) {
  ForestState state;
  const std::size_t n_trees = positive_int_param(spec, "trees");
  const std::size_t min_leaf = positive_int_param(spec, "min_leaf");
  const std::size_t m = x.front().size();
  const double requested = resolved_param(spec, "features_per_split");
  if (requested < 0.0 || requested != std::floor(requested))
    throw Error("random_forest: features_per_split must be a non-negative integer");
  std::size_t mtry = static_cast<std::size_t>(requested);
  if (mtry == 0)
    mtry = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(m)))) + 1;
  mtry = std::min(mtry, m);

  state.features_per_split = mtry;
  state.trees.reserve(n_trees);
  const std::size_t n = x.size();
  for (std::size_t t = 0; t < n_trees; ++t) {
    Rng rng(Rng::mix(spec.seed, t));
    std::vector<std::size_t> bootstrap(n);
    for (auto& i : bootstrap) i = static_cast<std::size_t>(rng.next_below(n));
    TreeGrower grower(x, y, GrowConfig{min_leaf, mtry, majority}, &rng);
    state.trees.push_back(grower.grow(std::move(bootstrap)));
  }
  return state;
}

// ---------------------------------------------------------------------------
// per-algorithm prediction

Prediction predict_knn(const KnnState& state, const MinMaxScaler& scaler,
                       const std::vector<double>& values, Label majority) {
  const auto q = scaler.apply(values);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(state.instances.size());
  for (std::size_t i = 0; i < state.instances.size(); ++i) {
    const auto& inst = state.instances[i];
    double d2 = 0.0;
    for (std::size_t f = 0; f < q.size(); ++f) {
      const double d = q[f] - inst[f];
      d2 += d * d;
    }
    dist.emplace_back(d2, i);
  }
  std::sort(dist.begin(), dist.end());  // distance ties resolved by index
  Prediction out;
  const std::size_t k = std::min(state.k, dist.size());
  for (std::size_t i = 0; i < k; ++i)
    out.scores[static_cast<std::size_t>(state.labels[dist[i].second])] += 1.0;
  out.scores[0] /= static_cast<double>(k);
  out.scores[1] /= static_cast<double>(k);
  out.label = argmax_label(out.scores, majority);
  return out;
}

Prediction predict_bayes(const BayesState& state, const std::vector<double>& values,
                         Label majority) {
  std::array<double, kNumClasses> lp = state.log_prior;
  for (std::size_t f = 0; f < values.size(); ++f) {
    const auto& edges = state.bin_edges[f];
    const auto bin = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), values[f]) - edges.begin());
    for (std::size_t c = 0; c < kNumClasses; ++c) lp[c] += state.log_cond[f][c][bin];
  }
  const double peak = std::max(lp[0], lp[1]);
  Prediction out;
  out.scores = {std::exp(lp[0] - peak), std::exp(lp[1] - peak)};
  const double total = out.scores[0] + out.scores[1];
  out.scores[0] /= total;
  out.scores[1] /= total;
  out.label = argmax_label(out.scores, majority);
  return out;
}

Prediction predict_forest(const ForestState& state, const std::vector<double>& values,
                          Label majority) {
  Prediction out;
  for (const auto& tree : state.trees)
    out.scores[static_cast<std::size_t>(tree.predict(values))] += 1.0;
  const double total = static_cast<double>(state.trees.size());
  out.scores[0] /= total;
  out.scores[1] /= total;
  out.label = argmax_label(out.scores, majority);
  return out;
}

// ---------------------------------------------------------------------------
// serialization helpers

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right,
                     static_cast<int>(n.label), n.counts[0], n.counts[1]});
  }
  return nodes;
}

Tree tree_from_json(const json& nodes) {
  Tree tree;
  for (const auto& row : nodes) {
    TreeNode n;
    n.feature = row.at(0).get<std::int32_t>();
    n.threshold = row.at(1).get<double>();
    n.left = row.at(2).get<std::int32_t>();
    n.right = row.at(3).get<std::int32_t>();
    n.label = row.at(4).get<int>() == 1 ? Label::positive : Label::negative;
    n.counts[0] = row.at(5).get<std::uint32_t>();
    n.counts[1] = row.at(6).get<std::uint32_t>();
    tree.nodes.push_back(n);
  }
  if (tree.nodes.empty()) throw Error("model file: empty tree");
  return tree;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::knn: return "knn";
    case Algorithm::bayes: return "bayes";
    case Algorithm::reptree: return "reptree";
    case Algorithm::random_forest: return "random_forest";
  }
  return "knn";
}

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
  if (s == "knn") return Algorithm::knn;
  if (s == "bayes") return Algorithm::bayes;
  if (s == "reptree") return Algorithm::reptree;
  if (s == "random_forest") return Algorithm::random_forest;
  return std::nullopt;
}

ClassifierSpec make_spec(Algorithm algorithm, std::map<std::string, double> params,
                         std::uint64_t seed) {
  ClassifierSpec spec{algorithm, std::move(params), seed};
  validate_spec(spec);
  return spec;
}

void validate_spec(const ClassifierSpec& spec) {
  const auto& known = known_params(spec.algorithm);
  for (const auto& [key, value] : spec.params) {
    if (!known.contains(key))
      throw Error("unknown parameter '" + key + "' for algorithm '" +
                  std::string(to_string(spec.algorithm)) + "'");
    if (!std::isfinite(value))
      throw Error("parameter '" + key + "' must be finite");
  }
}

double resolved_param(const ClassifierSpec& spec, std::string_view name) {
  const auto it = spec.params.find(std::string(name));
  if (it != spec.params.end()) return it->second;
  const auto& known = known_params(spec.algorithm);
  const auto def = known.find(std::string(name));
  if (def == known.end())
    throw Error("unknown parameter '" + std::string(name) + "'");
  return def->second;
}

MinMaxScaler MinMaxScaler::fit(const std::vector<const std::vector<double>*>& rows) {
  MinMaxScaler s;
  if (rows.empty()) return s;
  const std::size_t m = rows.front()->size();
  s.min.assign(m, 0.0);
  s.max.assign(m, 0.0);
  for (std::size_t f = 0; f < m; ++f) {
    double lo = (*rows.front())[f], hi = (*rows.front())[f];
    for (const auto* row : rows) {
      lo = std::min(lo, (*row)[f]);
      hi = std::max(hi, (*row)[f]);
    }
    s.min[f] = lo;
    s.max[f] = hi;
  }
  return s;
}

std::vector<double> MinMaxScaler::apply(const std::vector<double>& values) const {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t f = 0; f < values.size() && f < min.size(); ++f) {
    const double range = max[f] - min[f];
    if (range <= 0.0) {
      out[f] = 0.0;  // constant feature
    } else {
      out[f] = std::clamp((values[f] - min[f]) / range, 0.0, 1.0);
    }
  }
  return out;
}

Label Tree::predict(const std::vector<double>& values) const {
  std::int32_t at = 0;
  while (true) {
    const TreeNode& node = nodes[static_cast<std::size_t>(at)];
    if (node.feature < 0) return node.label;
    at = values[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                         : node.right;
  }
}

TrainedModel train(const ClassifierSpec& spec, const Dataset& data) {
  validate_spec(spec);
  if (!data.schema) throw Error("training data has no schema");
  if (data.rows.size() < 2) throw Error("at least 2 training instances required");

  std::vector<std::vector<double>> x;
  std::vector<Label> y;
  x.reserve(data.rows.size());
  y.reserve(data.rows.size());
  std::array<std::size_t, kNumClasses> class_n{};
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    if (!row.label) throw Error("training instance " + std::to_string(i) + " is unlabeled");
    if (row.values.size() != data.schema->size())
      throw Error("training instance " + std::to_string(i) +
                  " has wrong dimensionality");
    if (row.schema && !(*row.schema == *data.schema))
      throw Error("training instance " + std::to_string(i) +
                  " disagrees with the dataset schema");
    for (std::size_t f = 0; f < row.values.size(); ++f)
      if (!std::isfinite(row.values[f]))
        throw Error("non-finite feature value at instance " + std::to_string(i) +
                    ", feature " + std::to_string(f) + " ('" +
                    data.schema->names[f] + "')");
    x.push_back(row.values);
    y.push_back(*row.label);
    ++class_n[static_cast<std::size_t>(*row.label)];
  }
  if (class_n[0] == 0 || class_n[1] == 0)
    throw Error("training data contains a single class");

  TrainedModel model;
  model.spec = spec;
  model.schema = *data.schema;
  model.majority = majority_label(class_n);
  std::vector<const std::vector<double>*> row_ptrs;
  row_ptrs.reserve(x.size());
  for (const auto& row : x) row_ptrs.push_back(&row);
  model.normalization = MinMaxScaler::fit(row_ptrs);

  switch (spec.algorithm) {
    case Algorithm::knn:
      model.state = train_knn(x, y, spec, model.normalization);
      break;
    case Algorithm::bayes:
      model.state = train_bayes(x, y, spec);
      break;
    case Algorithm::reptree:
      model.state = train_reptree(x, y, spec, model.majority);
      break;
    case Algorithm::random_forest:
      model.state = train_forest(x, y, spec, model.majority);
      break;
  }
  return model;
}

Prediction predict(const TrainedModel& model, const FeatureVector& v) {
  if (v.schema && !(*v.schema == model.schema)) {
    const auto& got = v.schema->names;
    const auto& want = model.schema.names;
    for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
      const std::string g = i < got.size() ? got[i] : "<missing>";
      const std::string w = i < want.size() ? want[i] : "<missing>";
      if (g != w)
        throw Error("schema mismatch at feature " + std::to_string(i) + ": got '" +
                    g + "', model trained on '" + w + "'");
    }
    throw Error("schema mismatch");
  }
  if (v.values.size() != model.schema.size())
    throw Error("query has " + std::to_string(v.values.size()) +
                " features, model trained on " + std::to_string(model.schema.size()));
  for (double value : v.values)
    if (!std::isfinite(value)) throw Error("query contains a non-finite value");

  if (const auto* knn = std::get_if<KnnState>(&model.state))
    return predict_knn(*knn, model.normalization, v.values, model.majority);
  if (const auto* bayes = std::get_if<BayesState>(&model.state))
    return predict_bayes(*bayes, v.values, model.majority);
  if (const auto* reptree = std::get_if<ReptreeState>(&model.state)) {
    Prediction out;
    out.label = reptree->tree.predict(v.values);
    out.scores[static_cast<std::size_t>(out.label)] = 1.0;
    return out;
  }
  const auto& forest = std::get<ForestState>(model.state);
  return predict_forest(forest, v.values, model.majority);
}

std::string model_to_json(const TrainedModel& model) {
  json j;
  j["format"] = "uzopinion-model";
  j["version"] = 1;
  j["algorithm"] = to_string(model.spec.algorithm);
  j["params"] = model.spec.params;
  j["seed"] = model.spec.seed;
  j["schema"] = {{"names", model.schema.names}, {"blocks", model.schema.blocks}};
  j["normalization"] = {{"min", model.normalization.min},
                        {"max", model.normalization.max}};
  j["majority"] = to_string(model.majority);

  json state;
  if (const auto* knn = std::get_if<KnnState>(&model.state)) {
    state["kind"] = "knn";
    state["k"] = knn->k;
    state["instances"] = knn->instances;
    json labels = json::array();
    for (Label l : knn->labels) labels.push_back(static_cast<int>(l));
    state["labels"] = labels;
  } else if (const auto* bayes = std::get_if<BayesState>(&model.state)) {
    state["kind"] = "bayes";
    state["alpha"] = bayes->alpha;
    state["bin_edges"] = bayes->bin_edges;
    state["log_prior"] = bayes->log_prior;
    json cond = json::array();
    for (const auto& per_feature : bayes->log_cond)
      cond.push_back({per_feature[0], per_feature[1]});
    state["log_cond"] = cond;
  } else if (const auto* reptree = std::get_if<ReptreeState>(&model.state)) {
    state["kind"] = "reptree";
    state["tree"] = tree_to_json(reptree->tree);
    state["unpruned_nodes"] = reptree->unpruned_nodes;
    state["prune_set_accuracy_unpruned"] = reptree->prune_set_accuracy_unpruned;
    state["prune_set_accuracy_pruned"] = reptree->prune_set_accuracy_pruned;
  } else {
    const auto& forest = std::get<ForestState>(model.state);
    state["kind"] = "random_forest";
    state["features_per_split"] = forest.features_per_split;
    json trees = json::array();
    for (const auto& tree : forest.trees) trees.push_back(tree_to_json(tree));
    state["trees"] = trees;
  }
  j["state"] = std::move(state);
  return j.dump(2);
}

TrainedModel model_from_json(const std::string& text, std::string_view source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string(source_name) + ": not a valid model file: " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "uzopinion-model")
      throw Error(std::string(source_name) + ": not a model file");
    if (j.at("version").get<int>() != 1)
      throw Error(std::string(source_name) + ": unsupported model version");

    TrainedModel model;
    const auto algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    if (!algorithm)
      throw Error(std::string(source_name) + ": unknown algorithm");
    model.spec.algorithm = *algorithm;
    model.spec.params = j.at("params").get<std::map<std::string, double>>();
    model.spec.seed = j.at("seed").get<std::uint64_t>();
    validate_spec(model.spec);
    model.schema.names = j.at("schema").at("names").get<std::vector<std::string>>();
    model.schema.blocks = j.at("schema").at("blocks").get<std::vector<std::string>>();
    if (model.schema.names.size() != model.schema.blocks.size())
      throw Error(std::string(source_name) + ": inconsistent schema");
    model.normalization.min =
        j.at("normalization").at("min").get<std::vector<double>>();
    model.normalization.max =
        j.at("normalization").at("max").get<std::vector<double>>();
    if (model.normalization.min.size() != model.schema.size() ||
        model.normalization.max.size() != model.schema.size())
      throw Error(std::string(source_name) +
                  ": normalization does not match the schema");
    const auto majority = label_from_string(j.at("majority").get<std::string>());
    if (!majority) throw Error(std::string(source_name) + ": bad majority label");
    model.majority = *majority;

    const json& state = j.at("state");
    const auto kind = state.at("kind").get<std::string>();
    if (kind == "knn") {
      KnnState s;
      s.k = state.at("k").get<std::size_t>();
      s.instances = state.at("instances").get<std::vector<std::vector<double>>>();
      for (const auto& l : state.at("labels"))
        s.labels.push_back(l.get<int>() == 1 ? Label::positive : Label::negative);
      if (s.instances.size() != s.labels.size())
        throw Error(std::string(source_name) + ": corrupt knn state");
      model.state = std::move(s);
    } else if (kind == "bayes") {
      BayesState s;
      s.alpha = state.at("alpha").get<double>();
      s.bin_edges = state.at("bin_edges").get<std::vector<std::vector<double>>>();
      const auto prior = state.at("log_prior").get<std::vector<double>>();
      if (prior.size() != kNumClasses)
        throw Error(std::string(source_name) + ": corrupt bayes state");
      s.log_prior = {prior[0], prior[1]};
      for (const auto& per_feature : state.at("log_cond")) {
        std::array<std::vector<double>, kNumClasses> entry{
            per_feature.at(0).get<std::vector<double>>(),
            per_feature.at(1).get<std::vector<double>>()};
        s.log_cond.push_back(std::move(entry));
      }
      if (s.log_cond.size() != model.schema.size() ||
          s.bin_edges.size() != model.schema.size())
        throw Error(std::string(source_name) + ": corrupt bayes state");
      model.state = std::move(s);
    } else if (kind == "reptree") {
      ReptreeState s;
      s.tree = tree_from_json(state.at("tree"));
      s.unpruned_nodes = state.at("unpruned_nodes").get<std::size_t>();
      s.prune_set_accuracy_unpruned =
          state.at("prune_set_accuracy_unpruned").get<double>();
      s.prune_set_accuracy_pruned =
          state.at("prune_set_accuracy_pruned").get<double>();
      model.state = std::move(s);
    } else if (kind == "random_forest") {
      ForestState s;
      s.features_per_split = state.at("features_per_split").get<std::size_t>();
      for (const auto& tree : state.at("trees")) s.trees.push_back(tree_from_json(tree));
      if (s.trees.empty())
        throw Error(std::string(source_name) + ": forest has no trees");
      model.state = std::move(s);
    } else {
      throw Error(std::string(source_name) + ": unknown state kind '" + kind + "'");
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(std::string(source_name) + ": malformed model file: " + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file: " + path.string());
  out << model_to_json(model) << '\n';
  if (!out) throw Error("failed writing model file: " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str(), path.string());
}

}  // namespace uzopinion
