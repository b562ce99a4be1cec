#include "eqsig/ml/random_forest.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

std::size_t default_mtry(std::size_t dimension) {
  auto m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dimension))));
  while ((m + 1) * (m + 1) <= dimension) ++m;
  while (m * m > dimension) --m;
  return std::max<std::size_t>(m, 1);
}

RandomForest::RandomForest(std::vector<DecisionTree> trees, std::vector<std::uint64_t> tree_seeds,
                           std::size_t mtry)
    : trees_(std::move(trees)), tree_seeds_(std::move(tree_seeds)), mtry_(mtry) {
  if (trees_.empty()) throw Error(ErrorCode::BadModel, "forest has no trees");
  if (tree_seeds_.size() != trees_.size()) throw Error(ErrorCode::BadModel, "seed count mismatch");
  for (const auto& t : trees_)
    if (t.dimension() != trees_.front().dimension())
      throw Error(ErrorCode::BadModel, "forest trees disagree on dimension");
  if (mtry_ == 0 || mtry_ > trees_.front().dimension())
    throw Error(ErrorCode::BadModel, "mtry out of range");
}

RandomForest RandomForest::fit(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec) {
  check_training_data(X, y);
  spec.validate();
  const std::size_t mtry = std::min(spec.mtry.value_or(default_mtry(X.cols())), X.cols());
  const std::size_t n = X.rows();

  std::vector<DecisionTree> trees;
  std::vector<std::uint64_t> seeds;
  trees.reserve(spec.n_trees);
  std::vector<std::size_t> sample(n);
  for (std::size_t t = 0; t < spec.n_trees; ++t) {
    const std::uint64_t tree_seed = derive_seed(spec.seed, t);
    Rng rng(tree_seed);
    if (spec.bootstrap) {
      for (std::size_t& r : sample) r = static_cast<std::size_t>(rng.uniform_index(n));
    } else {
      std::iota(sample.begin(), sample.end(), std::size_t{0});
    }
    trees.push_back(DecisionTree::fit_rows(X, y, sample, spec, mtry, &rng));
    seeds.push_back(tree_seed);
  }
  return RandomForest(std::move(trees), std::move(seeds), mtry);
}

ClassCounts RandomForest::votes(std::span<const double> x) const {
  check_dimension(x);
  ClassCounts counts{};
  for (const auto& tree : trees_) ++counts[index_of(tree.predict(x))];
  return counts;
}

Label RandomForest::predict(std::span<const double> x) const { return majority_label(votes(x)); }

nlohmann::json RandomForest::parameters() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.parameters());
  return {{"mtry", mtry_}, {"tree_seeds", tree_seeds_}, {"trees", std::move(trees)}};
}

RandomForest RandomForest::from_parameters(const nlohmann::json& params) {
  try {
    std::vector<DecisionTree> trees;
    for (const auto& t : params.at("trees")) trees.push_back(DecisionTree::from_parameters(t));
    return RandomForest(std::move(trees), params.at("tree_seeds").get<std::vector<std::uint64_t>>(),
                        params.at("mtry").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadModel, std::string("random forest: ") + e.what());
  }
}

RandomForest fit_random_forest(const Matrix& X, std::span<const Label> y,
                               const ClassifierSpec& spec) {
  return RandomForest::fit(X, y, spec);
}

Label predict_forest(const RandomForest& forest, std::span<const double> x) {
  return forest.predict(x);
}

}  // namespace eqsig::ml
