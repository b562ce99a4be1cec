#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqsig/ml/classifier.hpp"

namespace eqsig::ml {

// Euclidean k-nearest-neighbour vote over a stored (standardized) training
// set. Distance ties go to the lower training index; vote ties to Hold.
class KnnClassifier final : public Classifier {
 public:
  // Throws Error{EmptyTraining | KTooLarge | DimensionMismatch}.
  KnnClassifier(Matrix X, std::vector<Label> y, std::size_t k);

  ClassifierKind kind() const override { return ClassifierKind::Knn; }
  std::size_t dimension() const override { return X_.cols(); }
  Label predict(std::span<const double> x) const override;
  nlohmann::json parameters() const override;
  static KnnClassifier from_parameters(const nlohmann::json& params);

  // Training indices of the k nearest points, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> x) const;
  std::size_t k() const { return k_; }

 private:
  Matrix X_;
  std::vector<Label> y_;
  std::size_t k_;
};

Label knn_predict(const Matrix& X, std::span<const Label> y, std::span<const double> x,
                  std::size_t k);

}  // namespace eqsig::ml
