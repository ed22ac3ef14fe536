#include "wavelife/theory.hpp"

#include <algorithm>
#include <cmath>

#include "wavelife/error.hpp"

namespace wavelife {
namespace {

bool combined_range(int alpha, int beta0) { return beta0 >= alpha + 1 && beta0 < 2 * alpha; }

Rational general_exponent(int alpha) { return Rational(alpha, 2); }
Rational zero_mean_exponent(int alpha) { return Rational(alpha * static_cast<std::int64_t>(alpha + 1), alpha + 2); }
Rational vanishing_exponent(int alpha, int beta0) { return min(Rational(beta0, 2), Rational(alpha)); }
Rational improved_exponent(int alpha, int beta0) {
  return Rational(static_cast<std::int64_t>(alpha + 1) * beta0, beta0 + 2);
}

// Higher rank wins ties.
int specificity(Regime r) { return static_cast<int>(r); }

}  // namespace

std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::General: return "General";
    case Regime::ZeroMean: return "ZeroMean";
    case Regime::VanishingOrders: return "VanishingOrders";
    case Regime::CombinedImproved: return "CombinedImproved";
  }
  return "Unknown";
}

std::vector<RegimeLine> regime_table(int alpha, std::optional<int> beta0, bool zero_mean) {
  if (alpha < 1) throw Error(Errc::InvalidOrders, "alpha must be >= 1");
  if (beta0 && *beta0 < alpha + 1) throw Error(Errc::InvalidOrders, "beta0 must be >= alpha + 1");

  std::vector<RegimeLine> lines;
  lines.push_back({Regime::General, true, general_exponent(alpha)});
  lines.push_back({Regime::ZeroMean, zero_mean, zero_mean ? zero_mean_exponent(alpha) : Rational()});
  lines.push_back({Regime::VanishingOrders, beta0.has_value(), beta0 ? vanishing_exponent(alpha, *beta0) : Rational()});
  const bool improved = zero_mean && beta0 && combined_range(alpha, *beta0);
  lines.push_back({Regime::CombinedImproved, improved, improved ? improved_exponent(alpha, *beta0) : Rational()});
  return lines;
}

LifespanPrediction predict(int alpha, std::optional<int> beta0, bool zero_mean) {
  const auto lines = regime_table(alpha, beta0, zero_mean);
  const RegimeLine* best = nullptr;
  for (const auto& line : lines) {
    if (!line.applies) continue;
    if (!best || best->exponent < line.exponent ||
        (best->exponent == line.exponent && specificity(line.regime) > specificity(best->regime)))
      best = &line;
  }

  LifespanPrediction out;
  out.exponent = best->exponent;
  out.regime = best->regime;
  switch (best->regime) {
    case Regime::General: break;
    case Regime::ZeroMean: out.conditions_used = {"zero_mean_g"}; break;
    case Regime::VanishingOrders: out.conditions_used = {"vanishing_pure_u_orders"}; break;
    case Regime::CombinedImproved:
      out.conditions_used = {"zero_mean_g", "vanishing_pure_u_orders", "beta0_below_2alpha"};
      break;
  }
  return out;
}

Rational combined_exponent(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 2) throw Error(Errc::OutOfRange, "need p, q >= 1 and r >= 2");
  const int s = p + q;
  // (r + 1)/2 < p + q < r
  if (!(2 * s > r + 1 && s < r))
    throw Error(Errc::ConditionViolated, "(r+1)/2 < p+q < r fails for p+q = " + std::to_string(s) +
                                             ", r = " + std::to_string(r));
  return Rational(static_cast<std::int64_t>(s) * (r - 1), r + 1);
}

Rational improvement_margin(int alpha, int beta0) {
  if (alpha < 1 || !combined_range(alpha, beta0))
    throw Error(Errc::InvalidOrders, "need alpha + 1 <= beta0 < 2 alpha");
  return improved_exponent(alpha, beta0) - max(zero_mean_exponent(alpha), Rational(beta0, 2));
}

double horizon(double c, double eps, int alpha, int beta0) {
  if (!(c > 0.0) || !(eps > 0.0)) throw Error(Errc::OutOfRange, "horizon needs c > 0 and eps > 0");
  const double k = improved_exponent(alpha, beta0).to_double();
  return std::max(0.0, c * std::pow(eps, -k) - 1.0);
}

}  // namespace wavelife
