#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ea {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;  // witness on failure, summary on success
};

struct Report {
  std::string subject;
  std::vector<Check> checks;
  bool sampled = false;

  bool passed() const;
  const Check* first_failure() const;
  void add(std::string name, bool passed, std::string detail = {});
  void merge(const Report& other);
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Scan limits for whole-algebra checks. A scan whose exact work estimate
// exceeds work_budget is replaced by `samples` seeded random probes and the
// report is flagged as sampled.
struct ValidationOptions {
  std::uint64_t work_budget = 50'000'000;
  std::uint64_t samples = 500'000;
  std::uint64_t seed = 1;
};

}  // namespace ea
