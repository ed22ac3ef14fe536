#pragma once

#include <optional>
#include <vector>

#include "wavelife/model.hpp"
#include "wavelife/picard.hpp"
#include "wavelife/rational.hpp"

namespace wavelife {

/// Discrete norms of a solution slab:
///   norm1 = max over interior-cone nodes of (1 + t + x)^p |u|
///   norm2 = max over exterior-band nodes of |u|
///   energy_norms[k] = max_t sum_{|m| = k} ||D^m Du(., t)||_{L2}
///   d_st = norm1 + norm2 + max_t sum_k (the summand above)
struct NormReport {
  double norm1 = 0.0;
  double norm2 = 0.0;
  std::vector<double> energy_norms;
  double d_st = 0.0;
  Rational p_weight;
  /// R(d_st, t_horizon); present only when the orders define p.
  std::optional<double> r_et;
};

/// p = (2 alpha - beta0) / (beta0 (alpha + 1)). Throws OutOfRange unless alpha + 1 <= beta0 < 2 alpha.
Rational weight_p(int alpha, int beta0);

/// E^alpha (1 + T)^{1 + p} + E^beta0 (1 + T)^{2 - beta0 p}.
double capital_r(double E, double T, int alpha, int beta0);

/// -(beta0 + 1) p + 1, verified against (beta0 - alpha)(2 + beta0) / ((alpha + 1) beta0) and positivity.
Rational positivity_identity_check(int alpha, int beta0);

/// Rows with t <= t_horizon enter the report. K is the derivative cap (0..2).
/// Without a valid beta0 the weight p is 0 and r_et is empty.
NormReport norm_report(const Field& u, int alpha, std::optional<int> beta0, double R, double t_horizon, int K = 2);

// ---------------------------------------------------------------------------
// Contraction probe: fits the smallest C with
//   D(u_{k+1}) <= C (eps + (R + sqrt R)(E + D(u_k)))
// for every Picard step of every run, where E = max_k D(u_k) and R = R(E, T).

struct ProbeRun {
  double eps = 0.0;
  double T = 0.0;
  bool converged = false;
  std::vector<double> iterate_norms;  // D(u_0), D(u_1), ...
};

struct ProbeSummary {
  double C = 0.0;
  std::vector<double> per_run_C;
  /// max/min of per_run_C.
  double spread = 0.0;
  bool stable = false;
};

/// Computes D for every stored iterate (the report must keep its iterates).
ProbeRun make_probe_run(const PicardReport& report, double eps, int alpha, std::optional<int> beta0, double R,
                        int K = 2);

/// Throws InsufficientRuns (< 3 runs), NonConverged (any run not converged).
ProbeSummary contraction_probe(const std::vector<ProbeRun>& runs, int alpha, int beta0);

}  // namespace wavelife
