#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aoi {

enum class Errc {
  InvalidGraph,
  DisconnectedGraph,
  SelfLoop,
  DuplicateEdge,
  IndexOutOfRange,
  BudgetOutOfRange,
  NodeIsBase,
  NonPositiveAlpha,
  ConvexityViolation,
  OutOfRange,
  InsufficientBudget,
  MaxMExceeded,
  InstanceTooLarge,
  InvalidProbability,
  ConfigInvalid,
  BatteryTooSmall,
  UnsortedLog,
  DimensionMismatch,
  BudgetTooSmall,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this type; `code()` lets callers
// (and tests) distinguish the failure class without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace aoi
