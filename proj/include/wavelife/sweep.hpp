#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavelife/lifespan.hpp"
#include "wavelife/model.hpp"
#include "wavelife/theory.hpp"

namespace wavelife {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log T against log(1/eps). The slope is the
/// lifespan exponent. Throws DegenerateInput for fewer than three points,
/// non-positive values, or repeated eps.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& eps_T);

/// eps_max, eps_max * ratio, ..., `points` values.
std::vector<double> geometric_eps(double eps_max, double ratio, int points);
/// `points` geometric values from eps_max down to eps_min inclusive.
std::vector<double> geometric_eps_between(double eps_max, double eps_min, int points);

/// Planted lifespans T = prefactor * eps^{-slope} * (1 + noise * (-1)^k), no solver runs.
struct SyntheticMode {
  double slope = 2.0;
  double prefactor = 1.0;
  double noise = 0.0;
};

struct SweepConfig {
  NonlinearitySpec spec;
  InitialData data{Profile{}, Profile{}, 1.0};
  std::vector<double> eps_values = geometric_eps(0.8, 0.8, 8);
  LifespanOptions lifespan;
  double verdict_tol = 0.20;
  unsigned workers = 0;
  std::optional<SyntheticMode> synthetic;
};

enum class Verdict { Consistent, Inconclusive, Inconsistent };
std::string_view verdict_name(Verdict v) noexcept;

struct SweepResult {
  std::string spec_summary;
  std::string data_summary;
  std::vector<double> eps_values;
  std::vector<LifespanRecord> records;
  FitResult fit;
  int trusted_count = 0;
  /// Trusted lifespans never decrease as eps decreases.
  bool monotone = false;
  LifespanPrediction prediction;
  double verdict_tol = 0.20;
  Verdict verdict = Verdict::Inconclusive;
};

/// One lifespan record per eps, a fit over trusted records, and the verdict
/// against the predicted exponent. Throws TooFewTrusted (< 3 trusted records).
SweepResult run_sweep(const SweepConfig& config);

/// Verdict from a fit: Inconclusive when fewer than 5 trusted points span
/// less than a decade; Consistent when the relative slope error is within
/// tol and r^2 >= 0.98; Inconsistent otherwise.
Verdict judge(const FitResult& fit, double predicted, int trusted, double eps_span, double tol);

/// sweep.csv, sweep.json and sweep.dat under `dir`.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace wavelife
