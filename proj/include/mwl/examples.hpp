#pragma once

// Registry of canned computations with known expected values.  Each run
// recomputes everything exactly and lists one check per expected fact.

#include <string>
#include <vector>

#include "mwl/json_io.hpp"

namespace mwl {

struct ExampleCheck {
  std::string label;
  std::string expected;
  std::string observed;
  bool passed = false;
};

struct ExampleReport {
  std::string name;
  std::string summary;
  std::vector<ExampleCheck> checks;
  Json details = Json::object();

  bool passed() const;
};

struct ExampleInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExampleInfo>& example_registry();

/// Throws InputError for names not in the registry.
ExampleReport run_example(const std::string& name);

}  // namespace mwl
