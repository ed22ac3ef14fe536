#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavelife {

enum class Errc {
  EmptyForce,
  DegenerateOrder,
  InvalidTerm,
  NonFinite,
  OutOfDomain,
  NotZeroMean,
  Diverged,
  CflViolation,
  HyperbolicityLoss,
  OutOfRange,
  InsufficientRuns,
  NonConverged,
  InvalidOrders,
  ConditionViolated,
  Overflow,
  BudgetExhausted,
  TooFewTrusted,
  DegenerateInput,
  Config,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wavelife
