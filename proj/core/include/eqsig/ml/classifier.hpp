#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eqsig/label.hpp"
#include "eqsig/matrix.hpp"
#include "eqsig/ml/spec.hpp"

namespace eqsig::ml {

// Common fit/predict contract. Models are immutable once fitted, so a
// const Classifier may be shared between threads.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ClassifierKind kind() const = 0;
  virtual std::size_t dimension() const = 0;
  // Throws Error{DimensionMismatch}.
  virtual Label predict(std::span<const double> x) const = 0;
  virtual nlohmann::json parameters() const = 0;

  std::vector<Label> predict_all(const Matrix& X) const;

 protected:
  void check_dimension(std::span<const double> x) const;
};

// Throws Error{EmptyTraining | DimensionMismatch | KTooLarge | InvalidConfig}.
std::unique_ptr<Classifier> fit_classifier(const ClassifierSpec& spec, const Matrix& X,
                                           std::span<const Label> y);

// Inverse of Classifier::parameters(). Throws Error{BadModel}.
std::unique_ptr<Classifier> classifier_from_parameters(ClassifierKind kind,
                                                       const nlohmann::json& params);

// Shared argument checks for every fit entry point.
void check_training_data(const Matrix& X, std::span<const Label> y);

}  // namespace eqsig::ml
