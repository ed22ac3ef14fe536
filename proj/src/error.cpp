#include "wavelife/error.hpp"

namespace wavelife {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyForce: return "EmptyForce";
    case Errc::DegenerateOrder: return "DegenerateOrder";
    case Errc::InvalidTerm: return "InvalidTerm";
    case Errc::NonFinite: return "NonFinite";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::NotZeroMean: return "NotZeroMean";
    case Errc::Diverged: return "Diverged";
    case Errc::CflViolation: return "CflViolation";
    case Errc::HyperbolicityLoss: return "HyperbolicityLoss";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InsufficientRuns: return "InsufficientRuns";
    case Errc::NonConverged: return "NonConverged";
    case Errc::InvalidOrders: return "InvalidOrders";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::Overflow: return "Overflow";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::TooFewTrusted: return "TooFewTrusted";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace wavelife
