#pragma once

#include <span>
#include <vector>

#include "wavelife/model.hpp"

namespace wavelife {

struct LifespanOptions {
  double dx = 0.01;  // coarsest level; level l uses dx / 2^l
  double courant = 0.5;
  int levels = 3;
  double trust_tol = 0.05;
  /// Time budget: runs that survive to this time are censored.
  double budget = 100.0;
  /// Zero selects the solver default.
  double blowup_threshold = 0.0;
  /// Upper bound on nx * nt for a single level.
  double max_cells = 5e10;
  unsigned workers = 1;
};

struct LevelResult {
  double dx = 0.0;
  double detected_T = 0.0;
  bool blew_up = false;
};

struct LifespanRecord {
  double eps = 0.0;
  std::vector<LevelResult> levels;  // decreasing dx
  double extrapolated_T = 0.0;
  /// Observed convergence order of the detected times; NaN when not measurable.
  double observed_order = 0.0;
  double rel_spread = 0.0;
  bool trusted = false;
  bool censored = false;
};

struct Extrapolation {
  double value = 0.0;
  double order = 0.0;  // NaN when no extrapolation was applied
};

/// Richardson extrapolation over the last three levels (dx halving each time),
/// using the observed order clamped to [0.5, 4]. Falls back to the finest
/// value when the differences do not shrink monotonically.
Extrapolation richardson(std::span<const LevelResult> levels);

/// Runs the leapfrog solver at dx, dx/2, ... and extrapolates the detected
/// blow-up time. Throws BudgetExhausted when even the coarsest level exceeds max_cells.
LifespanRecord estimate_lifespan(const NonlinearitySpec& spec, const InitialData& data, double eps,
                                 const LifespanOptions& options = {});

}  // namespace wavelife
