#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eqsig/ml/classifier.hpp"

namespace eqsig::ml {

inline constexpr double kVarianceSmoothing = 1e-9;

struct ClassGaussian {
  Label label = Label::Hold;
  double prior = 0.0;
  std::vector<double> mean;
  std::vector<double> variance;  // population variance plus smoothing
};

// Gaussian naive Bayes over the classes present in training.
class GaussianNb final : public Classifier {
 public:
  GaussianNb(std::vector<ClassGaussian> classes, double epsilon);

  static GaussianNb fit(const Matrix& X, std::span<const Label> y);

  ClassifierKind kind() const override { return ClassifierKind::GaussianNb; }
  std::size_t dimension() const override { return classes_.front().mean.size(); }
  Label predict(std::span<const double> x) const override;
  nlohmann::json parameters() const override;
  static GaussianNb from_parameters(const nlohmann::json& params);

  // log prior + sum of log densities, per label; nullopt for absent classes.
  std::array<std::optional<double>, kNumLabels> log_scores(std::span<const double> x) const;

  const std::vector<ClassGaussian>& classes() const { return classes_; }
  double epsilon() const { return epsilon_; }

 private:
  std::vector<ClassGaussian> classes_;
  double epsilon_ = 0.0;
};

// Argmax over present classes; a tie for the maximum resolves to Hold.
Label argmax_with_hold_ties(const std::array<std::optional<double>, kNumLabels>& scores);

GaussianNb fit_gaussian_nb(const Matrix& X, std::span<const Label> y);
Label predict_gaussian_nb(const GaussianNb& model, std::span<const double> x);

}  // namespace eqsig::ml
