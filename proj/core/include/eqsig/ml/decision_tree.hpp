#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "eqsig/ml/classifier.hpp"
#include "eqsig/ml/impurity.hpp"
#include "eqsig/rng.hpp"

namespace eqsig::ml {

// x[feature] <= threshold goes to `left`; children are node indices.
struct SplitNode {
  std::size_t feature = 0;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;

  friend bool operator==(const SplitNode&, const SplitNode&) = default;
};

struct LeafNode {
  ClassCounts counts{};
  Label label = Label::Hold;  // majority of counts, ties -> Hold

  friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

using TreeNode = std::variant<SplitNode, LeafNode>;

// CART tree stored as a flat node array, root at index 0.
class DecisionTree final : public Classifier {
 public:
  DecisionTree(std::vector<TreeNode> nodes, std::size_t dimension);

  static DecisionTree fit(const Matrix& X, std::span<const Label> y, const ClassifierSpec& spec);

  // Grows a tree over a row multiset (rows may repeat). When `sampler` is
  // set, each node considers only `features_per_split` features drawn
  // without replacement.
  static DecisionTree fit_rows(const Matrix& X, std::span<const Label> y,
                               std::span<const std::size_t> rows, const ClassifierSpec& spec,
                               std::size_t features_per_split, Rng* sampler);

  ClassifierKind kind() const override { return ClassifierKind::DecisionTree; }
  std::size_t dimension() const override { return dimension_; }
  Label predict(std::span<const double> x) const override;
  nlohmann::json parameters() const override;
  static DecisionTree from_parameters(const nlohmann::json& params);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t dimension_ = 0;
};

DecisionTree fit_decision_tree(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec);
Label predict_tree(const DecisionTree& tree, std::span<const double> x);

}  // namespace eqsig::ml
