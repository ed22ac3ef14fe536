#pragma once

#include <vector>

#include "wavelife/linear_kernel.hpp"
#include "wavelife/model.hpp"

namespace wavelife {

struct PicardOptions {
  /// Stop once sup|u_{k+1} - u_k| <= tol. Zero selects 1e-10 * max(1, sup|eps u0|).
  double tol = 0.0;
  int max_iter = 50;
  /// Keep u_0, u_1, ... in the report (needed by the contraction probe).
  bool keep_iterates = false;
  DuhamelMethod method = DuhamelMethod::Auto;
};

struct PicardReport {
  int iterations = 0;
  std::vector<double> sup_diffs;
  bool converged = false;
  double tol = 0.0;
  Field final;
  std::vector<Field> iterates;
};

/// b(v, Dv) v_xx + 2 a0(v, Dv) v_tx + F(v, Dv) with difference-quotient derivatives.
Field picard_rhs(const NonlinearitySpec& spec, const Field& v);

/// One application of the map v -> eps u0 + L(rhs(v)), clipped to the cone.
Field picard_map(const NonlinearitySpec& spec, const InitialData& data, const Field& free, const Field& v,
                 DuhamelMethod method = DuhamelMethod::Auto);

/// Iterates u_{k+1} = eps u0 + L(rhs(u_k)) from u_0 = eps u0 on the whole slab.
/// Throws Diverged when the step size grows three times in a row by a total
/// factor above 10 (or an iterate overflows), NonFinite when the first step does.
PicardReport picard_solve(const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid,
                          const PicardOptions& options = {});

/// sup |u - (eps u0 + L(rhs(u)))|.
double fixed_point_residual(const NonlinearitySpec& spec, const InitialData& data, double eps, const Field& u);

}  // namespace wavelife
