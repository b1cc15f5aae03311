#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "erc/parser.hpp"

namespace erc::testing {

inline std::string data_path(std::string_view name) { return std::string(ERC_TEST_DATA) + "/" + std::string(name); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ERModel parse_or_die(std::string_view source) {
  auto parsed = parse_model(source);
  if (!parsed.ok()) {
    std::string all;
    for (const auto& e : parsed.errors)
      all += to_string(e) + "\n";
    throw std::runtime_error("fixture does not parse:\n" + all);
  }
  return std::move(*parsed.model);
}

inline ERModel golden_model() { return parse_or_die(read_file(data_path("teaching.erdm"))); }

}  // namespace erc::testing
