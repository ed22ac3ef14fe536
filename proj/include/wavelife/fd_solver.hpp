#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wavelife/model.hpp"

namespace wavelife {

struct FdOptions {
  /// Halt once max(|u|, |u_t|) exceeds this. Zero selects 1e3 * eps * sup|u0|.
  double blowup_threshold = 0.0;
  /// Keep every store_stride-th row in the returned Field; 0 keeps none.
  int store_stride = 1;
  /// Record the leapfrog energy after every step.
  bool track_energy = false;
  /// Called with (t, grid, row) every snapshot_stride steps when set.
  int snapshot_stride = 0;
  std::function<void(double, const Grid&, std::span<const double>)> on_snapshot;
};

struct FdResult {
  /// Stored rows; its grid's dt is store_stride * dt of the stepping grid.
  Field field;
  std::optional<double> blowup_time;
  double threshold = 0.0;
  double final_time = 0.0;
  /// Last finite row and its time derivative.
  std::vector<double> final_row;
  std::vector<double> final_ut;
  /// Energy at half steps t_{n+1/2}, when tracked.
  std::vector<double> energy;
};

/// Leapfrog scheme for u_tt = (1 + b) u_xx + 2 a0 u_tx + F on `grid`, seeded by
/// a second-order Taylor step. F sees the centered u_t (solved per node by
/// fixed-point iteration); b and a0 see the second-order backward u_t.
/// Nodes with |x| > t + R + dx are held at exactly zero.
/// Throws CflViolation, HyperbolicityLoss, OutOfRange.
FdResult fd_solve(const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid,
                  const FdOptions& options = {});

/// Leapfrog-conserved energy between rows u_n and u_{n+1}:
/// 1/2 sum [((u_{n+1}-u_n)/dt)^2 + D+u_{n+1} D+u_n] dx.
double leapfrog_energy(std::span<const double> u_n, std::span<const double> u_np1, double dx, double dt);

/// 1/2 int (u_t^2 + u_x^2) dx with centered u_x, trapezoid in x.
double continuum_energy(std::span<const double> u, std::span<const double> ut, double dx);

}  // namespace wavelife
