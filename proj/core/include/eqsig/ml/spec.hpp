#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace eqsig::ml {

enum class ClassifierKind { DecisionTree, RandomForest, Knn, GaussianNb };
enum class Criterion { Gini, Entropy };

std::string_view to_string(ClassifierKind kind);
std::string_view to_string(Criterion criterion);
// Accepts the hyphenated names ("random-forest") and underscore variants.
std::optional<ClassifierKind> classifier_kind_from_string(std::string_view name);
std::optional<Criterion> criterion_from_string(std::string_view name);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::RandomForest;
  Criterion criterion = Criterion::Gini;
  std::size_t n_trees = 10;
  std::size_t k = 5;
  std::optional<std::size_t> max_depth;  // unlimited when empty
  std::size_t min_samples_split = 2;
  std::uint64_t seed = 0;
  // Features sampled per forest split; floor(sqrt(d)) when empty.
  std::optional<std::size_t> mtry;
  // Test hook: when false every forest tree sees the full training set.
  bool bootstrap = true;

  // Throws Error{InvalidConfig}.
  void validate() const;

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

nlohmann::json to_json(const ClassifierSpec& spec);
ClassifierSpec spec_from_json(const nlohmann::json& j);

}  // namespace eqsig::ml
