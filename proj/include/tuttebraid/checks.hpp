#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tuttebraid {

struct CheckOutcome {
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json timing = nlohmann::json::object();  // wall-clock figures, kept apart from details
};

struct CheckInfo {
  std::string name;
  int criterion = 0;
  std::string summary;
  std::function<CheckOutcome()> run;
};

struct CheckResult {
  std::string name;
  int criterion = 0;
  std::string summary;
  bool pass = false;
  double seconds = 0;
  nlohmann::json details;
  nlohmann::json timing;
  nlohmann::json to_json(bool with_timing) const;
};

/// The acceptance suite, in criterion order.
const std::vector<CheckInfo>& check_registry();
std::vector<std::string> check_names();
/// Runs one check by name; unknown names raise PreconditionError listing the valid ones.
CheckResult run_check(const std::string& name);

}  // namespace tuttebraid
