#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eqsig/ml/decision_tree.hpp"

namespace eqsig::ml {

// Bagged CART ensemble. Tree t draws its bootstrap sample and its per-node
// feature subsets from Rng::derive(seed, t), so the forest does not depend
// on the order in which trees are grown.
class RandomForest final : public Classifier {
 public:
  RandomForest(std::vector<DecisionTree> trees, std::vector<std::uint64_t> tree_seeds,
               std::size_t mtry);

  static RandomForest fit(const Matrix& X, std::span<const Label> y, const ClassifierSpec& spec);

  ClassifierKind kind() const override { return ClassifierKind::RandomForest; }
  std::size_t dimension() const override { return trees_.front().dimension(); }
  Label predict(std::span<const double> x) const override;
  nlohmann::json parameters() const override;
  static RandomForest from_parameters(const nlohmann::json& params);

  ClassCounts votes(std::span<const double> x) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<std::uint64_t>& tree_seeds() const { return tree_seeds_; }
  std::size_t mtry() const { return mtry_; }

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::uint64_t> tree_seeds_;
  std::size_t mtry_ = 1;
};

// floor(sqrt(d)), at least 1.
std::size_t default_mtry(std::size_t dimension);

RandomForest fit_random_forest(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec);
Label predict_forest(const RandomForest& forest, std::span<const double> x);

}  // namespace eqsig::ml
