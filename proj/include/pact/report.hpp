#pragma once

#include <string>
#include <vector>

namespace pact {

struct Violation {
  std::string condition;             // e.g. "axiom-3", "(i)", "(ii)"
  std::vector<std::string> witness;  // offending tuple, by name
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }

  void add(std::string condition, std::vector<std::string> witness, std::string message) {
    violations.push_back({std::move(condition), std::move(witness), std::move(message)});
  }

  bool has(const std::string& condition) const {
    for (const auto& v : violations)
      if (v.condition == condition) return true;
    return false;
  }

  const Violation* first(const std::string& condition) const {
    for (const auto& v : violations)
      if (v.condition == condition) return &v;
    return nullptr;
  }

  std::string summary() const;
};

}  // namespace pact
