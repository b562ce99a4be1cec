#include "eqsig/ml/classifier.hpp"

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"
#include "eqsig/ml/decision_tree.hpp"
#include "eqsig/ml/knn.hpp"
#include "eqsig/ml/naive_bayes.hpp"
#include "eqsig/ml/random_forest.hpp"

namespace eqsig::ml {

std::vector<Label> Classifier::predict_all(const Matrix& X) const {
  std::vector<Label> out;
  out.reserve(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) out.push_back(predict(X.row(r)));
  return out;
}

void Classifier::check_dimension(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(x.size()) +
                                                  " features, model expects " +
                                                  std::to_string(dimension()));
  }
}

void check_training_data(const Matrix& X, std::span<const Label> y) {
  if (X.rows() == 0 || y.empty()) throw Error(ErrorCode::EmptyTraining, "no training rows");
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(X.rows()) + " rows but " +
                                                  std::to_string(y.size()) + " labels");
  }
  if (X.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "no feature columns");
}

std::unique_ptr<Classifier> fit_classifier(const ClassifierSpec& spec, const Matrix& X,
                                           std::span<const Label> y) {
  spec.validate();
  switch (spec.kind) {
    case ClassifierKind::DecisionTree:
      return std::make_unique<DecisionTree>(DecisionTree::fit(X, y, spec));
    case ClassifierKind::RandomForest:
      return std::make_unique<RandomForest>(RandomForest::fit(X, y, spec));
    case ClassifierKind::Knn:
      return std::make_unique<KnnClassifier>(X, std::vector<Label>(y.begin(), y.end()), spec.k);
    case ClassifierKind::GaussianNb:
      return std::make_unique<GaussianNb>(GaussianNb::fit(X, y));
  }
  throw Error(ErrorCode::InvalidConfig, "unknown classifier kind");
}

std::unique_ptr<Classifier> classifier_from_parameters(ClassifierKind kind,
                                                       const nlohmann::json& params) {
  switch (kind) {
    case ClassifierKind::DecisionTree:
      return std::make_unique<DecisionTree>(DecisionTree::from_parameters(params));
    case ClassifierKind::RandomForest:
      return std::make_unique<RandomForest>(RandomForest::from_parameters(params));
    case ClassifierKind::Knn:
      return std::make_unique<KnnClassifier>(KnnClassifier::from_parameters(params));
    case ClassifierKind::GaussianNb:
      return std::make_unique<GaussianNb>(GaussianNb::from_parameters(params));
  }
  throw Error(ErrorCode::BadModel, "unknown classifier kind");
}

}  // namespace eqsig::ml
