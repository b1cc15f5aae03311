#pragma once

#include <string>
#include <vector>

#include "erc/ermodel.hpp"
#include "erc/translator.hpp"

namespace erc {

/// Element counts read straight off a model, with no reference to how the
/// translator walks it.
struct Census {
  Tally tally;
  /// Ids of the elements that each cost exactly one translation step.
  std::vector<std::string> step_elements;
  /// Ids of every element that must be traceable in the scheme's provenance.
  std::vector<std::string> input_elements;
};

Census take_census(const ERModel& model, CompulsoryCounting counting);

struct PropertyCheck {
  std::string name;  // linearity, soundness, completeness, optimality
  bool passed = false;
  std::string detail;
};

/// Checks a translation against the census of its effective model.
std::vector<PropertyCheck> check_properties(const TranslationResult& result);

}  // namespace erc
