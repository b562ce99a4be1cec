#include "eqsig/ml/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& X, std::span<const Label> y, const ClassifierSpec& spec,
              std::size_t features_per_split, Rng* sampler)
      : X_(X), y_(y), spec_(spec), features_per_split_(features_per_split), sampler_(sampler) {
    all_features_.resize(X.cols());
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  std::vector<TreeNode> build(std::vector<std::size_t> rows) {
    rows_ = std::move(rows);
    grow(0, rows_.size(), 0);
    return std::move(nodes_);
  }

 private:
  std::size_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
    const std::span<const std::size_t> rows(rows_.data() + begin, end - begin);
    ClassCounts counts{};
    for (std::size_t r : rows) ++counts[index_of(y_[r])];

    const std::size_t id = nodes_.size();
    nodes_.emplace_back(LeafNode{counts, majority_label(counts)});

    const bool pure = std::count(counts.begin(), counts.end(), std::size_t{0}) >= 2;
    const bool depth_reached = spec_.max_depth && depth >= *spec_.max_depth;
    if (pure || depth_reached || rows.size() < spec_.min_samples_split) return id;

    const auto split = best_split(X_, y_, rows, spec_.criterion, candidates());
    if (!split) return id;

    auto middle = std::partition(rows_.begin() + static_cast<std::ptrdiff_t>(begin),
                                 rows_.begin() + static_cast<std::ptrdiff_t>(end),
                                 [&](std::size_t r) { return X_(r, split->feature) <= split->threshold; });
    const auto mid = static_cast<std::size_t>(middle - rows_.begin());

    const std::size_t left = grow(begin, mid, depth + 1);
    const std::size_t right = grow(mid, end, depth + 1);
    nodes_[id] = SplitNode{split->feature, split->threshold, left, right};
    return id;
  }

  std::span<const std::size_t> candidates() {
    if (!sampler_ || features_per_split_ >= all_features_.size()) return all_features_;
    sampled_ = all_features_;
    // Partial Fisher-Yates: the first features_per_split slots end up a
    // uniform sample without replacement.
    for (std::size_t i = 0; i < features_per_split_; ++i) {
      const auto j = i + static_cast<std::size_t>(sampler_->uniform_index(sampled_.size() - i));
      std::swap(sampled_[i], sampled_[j]);
    }
    sampled_.resize(features_per_split_);
    std::sort(sampled_.begin(), sampled_.end());
    return sampled_;
  }

  const Matrix& X_;
  std::span<const Label> y_;
  const ClassifierSpec& spec_;
  std::size_t features_per_split_;
  Rng* sampler_;
  std::vector<std::size_t> all_features_;
  std::vector<std::size_t> sampled_;
  std::vector<std::size_t> rows_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t dimension)
    : nodes_(std::move(nodes)), dimension_(dimension) {
  if (nodes_.empty()) throw Error(ErrorCode::BadModel, "tree has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (const auto* s = std::get_if<SplitNode>(&nodes_[i])) {
      if (s->left <= i || s->right <= i || s->left >= nodes_.size() ||
          s->right >= nodes_.size() || s->feature >= dimension_) {
        throw Error(ErrorCode::BadModel, "tree node " + std::to_string(i) + " is inconsistent");
      }
    }
  }
}

DecisionTree DecisionTree::fit(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec) {
  check_training_data(X, y);
  std::vector<std::size_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit_rows(X, y, rows, spec, X.cols(), nullptr);
}

DecisionTree DecisionTree::fit_rows(const Matrix& X, std::span<const Label> y,
                                    std::span<const std::size_t> rows, const ClassifierSpec& spec,
                                    std::size_t features_per_split, Rng* sampler) {
  check_training_data(X, y);
  if (rows.empty()) throw Error(ErrorCode::EmptyTraining, "no rows for tree");
  TreeBuilder builder(X, y, spec, features_per_split, sampler);
  return DecisionTree(builder.build({rows.begin(), rows.end()}), X.cols());
}

Label DecisionTree::predict(std::span<const double> x) const {
  check_dimension(x);
  std::size_t at = 0;
  while (const auto* s = std::get_if<SplitNode>(&nodes_[at]))
    at = x[s->feature] <= s->threshold ? s->left : s->right;
  return std::get<LeafNode>(nodes_[at]).label;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (const auto* s = std::get_if<SplitNode>(&nodes_[i])) {
      level[s->left] = level[i] + 1;
      level[s->right] = level[i] + 1;
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) {
    return std::holds_alternative<LeafNode>(n);
  }));
}

nlohmann::json DecisionTree::parameters() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& node : nodes_) {
    if (const auto* s = std::get_if<SplitNode>(&node)) {
      nodes.push_back({{"feature", s->feature}, {"threshold", s->threshold},
                       {"left", s->left}, {"right", s->right}});
    } else {
      const auto& leaf = std::get<LeafNode>(node);
      nodes.push_back({{"counts", leaf.counts}, {"label", index_of(leaf.label)}});
    }
  }
  return {{"dimension", dimension_}, {"nodes", std::move(nodes)}};
}

DecisionTree DecisionTree::from_parameters(const nlohmann::json& params) {
  try {
    std::vector<TreeNode> nodes;
    for (const auto& n : params.at("nodes")) {
      if (n.contains("counts")) {
        auto label = label_from_int(n.at("label").get<int>());
        if (!label) throw Error(ErrorCode::BadModel, "bad leaf label");
        nodes.emplace_back(LeafNode{n.at("counts").get<ClassCounts>(), *label});
      } else {
        nodes.emplace_back(SplitNode{n.at("feature").get<std::size_t>(),
                                     n.at("threshold").get<double>(),
                                     n.at("left").get<std::size_t>(),
                                     n.at("right").get<std::size_t>()});
      }
    }
    return DecisionTree(std::move(nodes), params.at("dimension").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadModel, std::string("decision tree: ") + e.what());
  }
}

DecisionTree fit_decision_tree(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec) {
  return DecisionTree::fit(X, y, spec);
}

Label predict_tree(const DecisionTree& tree, std::span<const double> x) { return tree.predict(x); }

}  // namespace eqsig::ml
