#include "eqsig/ml/model.hpp"

#include <nlohmann/json.hpp>

#include "eqsig/error.hpp"

namespace eqsig::ml {

Label TrainedModel::predict(std::span<const double> raw) const {
  return classifier->predict(scaler.apply(raw));
}

nlohmann::json TrainedModel::to_json() const {
  return {{"format", "eqsig-model"},
          {"version", 1},
          {"kind", to_string(classifier->kind())},
          {"spec", ml::to_json(spec)},
          {"features", features},
          {"horizon", horizon},
          {"scaler", {{"mean", scaler.mean()}, {"std", scaler.stddev()}}},
          {"parameters", classifier->parameters()}};
}

TrainedModel TrainedModel::from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "eqsig-model")
      throw Error(ErrorCode::BadModel, "not an eqsig model document");
    TrainedModel m;
    m.spec = spec_from_json(doc.at("spec"));
    m.features = doc.at("features").get<std::vector<std::string>>();
    m.horizon = doc.at("horizon").get<int>();
    m.scaler = transform::Scaler(doc.at("scaler").at("mean").get<std::vector<double>>(),
                                 doc.at("scaler").at("std").get<std::vector<double>>());
    auto kind = classifier_kind_from_string(doc.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::BadModel, "unknown model kind");
    m.classifier = classifier_from_parameters(*kind, doc.at("parameters"));
    if (m.classifier->dimension() != m.features.size() ||
        m.scaler.dimension() != m.features.size()) {
      throw Error(ErrorCode::BadModel, "feature count disagrees with model parameters");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadModel, e.what());
  }
}

TrainedModel train_model(const ClassifierSpec& spec, std::span<const transform::FeatureRow> rows,
                         std::size_t label_slot, int horizon, std::vector<std::string> features) {
  std::vector<transform::FeatureRow> labelled;
  std::vector<Label> y;
  for (const auto& row : rows) {
    if (label_slot < row.labels.size() && row.labels[label_slot]) {
      labelled.push_back(row);
      y.push_back(*row.labels[label_slot]);
    }
  }
  if (labelled.empty()) {
    throw Error(ErrorCode::EmptyTraining, "no rows labelled for day " + std::to_string(horizon));
  }
  const Matrix raw = transform::feature_matrix(labelled);
  if (raw.cols() != features.size()) {
    throw Error(ErrorCode::DimensionMismatch, "feature names do not match row width");
  }

  TrainedModel m;
  m.spec = spec;
  m.features = std::move(features);
  m.horizon = horizon;
  m.scaler = transform::Scaler::fit(raw);
  m.classifier = fit_classifier(spec, m.scaler.apply(raw), y);
  return m;
}

}  // namespace eqsig::ml
