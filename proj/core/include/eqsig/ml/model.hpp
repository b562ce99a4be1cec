#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eqsig/ml/classifier.hpp"
#include "eqsig/transform.hpp"

namespace eqsig::ml {

// A fitted classifier together with everything needed to apply it to raw
// feature rows: the feature names it was trained on, the horizon its labels
// came from and the scaler fitted on its training rows.
struct TrainedModel {
  ClassifierSpec spec;
  std::vector<std::string> features;
  int horizon = 0;
  transform::Scaler scaler;
  std::shared_ptr<const Classifier> classifier;

  // `raw` holds unscaled values in `features` order.
  Label predict(std::span<const double> raw) const;

  nlohmann::json to_json() const;
  // Throws Error{BadModel}.
  static TrainedModel from_json(const nlohmann::json& doc);
};

// Fits on the rows whose label for `label_slot` is present. Features are
// standardized with a scaler fitted on those same rows.
// Throws Error{EmptyTraining | TooFewRows | ...}.
TrainedModel train_model(const ClassifierSpec& spec, std::span<const transform::FeatureRow> rows,
                         std::size_t label_slot, int horizon, std::vector<std::string> features);

}  // namespace eqsig::ml
