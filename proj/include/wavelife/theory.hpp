#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavelife/rational.hpp"

namespace wavelife {

// Lifespan exponent calculus: T(eps) >= C eps^{-k} for the exponent k of each
// regime. Everything here is exact rational arithmetic.

enum class Regime { General, ZeroMean, VanishingOrders, CombinedImproved };

std::string_view regime_name(Regime r) noexcept;

struct LifespanPrediction {
  Rational exponent;
  Regime regime = Regime::General;
  std::vector<std::string> conditions_used;
};

/// One line of the regime table: whether it applies and the exponent it gives.
struct RegimeLine {
  Regime regime;
  bool applies = false;
  Rational exponent;  // meaningful only when applies
};

/// General:          alpha / 2
/// ZeroMean:         alpha (alpha + 1) / (alpha + 2)        if int g = 0
/// VanishingOrders:  min(beta0 / 2, alpha)                  if beta0 is given
/// CombinedImproved: (alpha + 1) beta0 / (beta0 + 2)        if int g = 0 and alpha + 1 <= beta0 < 2 alpha
std::vector<RegimeLine> regime_table(int alpha, std::optional<int> beta0, bool zero_mean);

/// Best applicable exponent; ties resolve toward the more specific regime.
/// Throws InvalidOrders unless alpha >= 1 and (no beta0 or beta0 >= alpha + 1).
LifespanPrediction predict(int alpha, std::optional<int> beta0, bool zero_mean);

/// (p + q)(r - 1) / (r + 1) for u^p u_t^q + u^r, valid when (r + 1)/2 < p + q < r.
/// Throws ConditionViolated otherwise, OutOfRange for p, q < 1 or r < 2.
Rational combined_exponent(int p, int q, int r);

/// (alpha + 1) beta0 / (beta0 + 2) - max(alpha (alpha + 1)/(alpha + 2), beta0 / 2).
/// Throws InvalidOrders unless alpha + 1 <= beta0 < 2 alpha.
Rational improvement_margin(int alpha, int beta0);

/// c eps^{-(alpha + 1) beta0 / (beta0 + 2)} - 1, floored at zero.
double horizon(double c, double eps, int alpha, int beta0);

}  // namespace wavelife
