#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trust/stad.hpp"
#include "trust/vocab.hpp"

namespace trust {

struct RequiredProperty {
  std::string property;  // CURIE
  Range range;
  std::size_t min = 1;
  std::optional<std::size_t> max;
};

struct OptionalProperty {
  std::string property;
  Range range;
  std::optional<std::size_t> max;  // nullopt = unbounded
};

struct Shape {
  std::string target_class;
  std::vector<RequiredProperty> required;
  std::vector<OptionalProperty> optional;
  // At least one property of each group must be present (E101 otherwise).
  std::vector<std::vector<std::string>> one_of;
};

// Shapes derived from the vocabulary's property descriptors plus the
// disjunctive LegalData identifier requirement.
const std::vector<Shape>& shape_table();
const Shape* shape_for(std::string_view class_name);

enum class FindingCode { MissingRequired, RangeViolation, CardinalityViolation, DanglingReference, AdvisoryMissing };

std::string_view finding_code_id(FindingCode c);  // "E101" ... "W201"
bool is_error(FindingCode c);

struct Finding {
  FindingCode code = FindingCode::MissingRequired;
  Term node;
  std::optional<std::string> property;  // CURIE
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;
  bool valid = true;
};

// Expert rating threshold at or below which a missing category warns (must/should).
inline constexpr double kAdvisoryRatingThreshold = 2.0;

// Structural check of every typed node against its shape, plus one W201 per
// must/should document category with no instance. Findings are sorted by
// (code, node, property).
ValidationReport validate_graph(const TrustGraph& graph);

}  // namespace trust
