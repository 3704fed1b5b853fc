#include "aoi/error.hpp"

namespace aoi {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::BudgetOutOfRange: return "BudgetOutOfRange";
    case Errc::NodeIsBase: return "NodeIsBase";
    case Errc::NonPositiveAlpha: return "NonPositiveAlpha";
    case Errc::ConvexityViolation: return "ConvexityViolation";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InsufficientBudget: return "InsufficientBudget";
    case Errc::MaxMExceeded: return "MaxMExceeded";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::InvalidProbability: return "InvalidProbability";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::BatteryTooSmall: return "BatteryTooSmall";
    case Errc::UnsortedLog: return "UnsortedLog";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BudgetTooSmall: return "BudgetTooSmall";
  }
  return "Unknown";
}

}  // namespace aoi
