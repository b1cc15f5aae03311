#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "erc/ermodel.hpp"
#include "erc/source.hpp"

namespace erc {

struct ModelParseResult {
  std::optional<ERModel> model;
  std::vector<ParseError> errors;

  bool ok() const { return model.has_value(); }
};

/// Reads the `.erdm` text into a model. Stops at the first syntax error;
/// duplicate names are all reported. References are not resolved here.
ModelParseResult parse_model_syntax(std::string_view source);

/// parse_model_syntax followed by validate_model. On success the model is
/// valid; model errors are reported as ParseErrors at the offending element.
ModelParseResult parse_model(std::string_view source);

}  // namespace erc
