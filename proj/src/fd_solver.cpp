#include "wavelife/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavelife/error.hpp"
#include "wavelife/linear_kernel.hpp"

namespace wavelife {
namespace {

constexpr int kMaxInner = 30;

struct ActiveRange {
  int lo;
  int hi;  // inclusive
};

/// Nodes with |x| <= t + R + dx.
ActiveRange active_range(const Grid& g, double t, double R) {
  const int half = static_cast<int>(std::floor((t + R + g.dx) / g.dx + 1e-9));
  return {std::max(1, g.origin - half), std::min(g.nx - 2, g.origin + half)};
}

void check_hyperbolic(const NonlinearitySpec& spec, double u, double ut, double ux, double courant, double t) {
  const double b = spec.b(u, ut, ux);
  const double a0 = spec.a0(u, ut, ux);
  if (!(1.0 + b > 0.0))
    throw Error(Errc::HyperbolicityLoss, "1 + b <= 0 at t = " + std::to_string(t));
  const double speed = std::fabs(a0) + std::sqrt(a0 * a0 + 1.0 + b);
  if (speed * courant > 1.0)
    throw Error(Errc::CflViolation, "characteristic speed " + std::to_string(speed) + " exceeds dx/dt at t = " +
                                        std::to_string(t));
}

}  // namespace

double leapfrog_energy(std::span<const double> u_n, std::span<const double> u_np1, double dx, double dt) {
  double e = 0.0;
  const std::size_t nx = u_n.size();
  for (std::size_t j = 0; j < nx; ++j) {
    const double ut = (u_np1[j] - u_n[j]) / dt;
    e += ut * ut;
    if (j + 1 < nx) e += (u_np1[j + 1] - u_np1[j]) * (u_n[j + 1] - u_n[j]) / (dx * dx);
  }
  return 0.5 * e * dx;
}

double continuum_energy(std::span<const double> u, std::span<const double> ut, double dx) {
  double e = 0.0;
  const std::size_t nx = u.size();
  for (std::size_t j = 1; j + 1 < nx; ++j) {
    const double ux = (u[j + 1] - u[j - 1]) / (2.0 * dx);
    e += ut[j] * ut[j] + ux * ux;
  }
  return 0.5 * e * dx;
}

FdResult fd_solve(const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid,
                  const FdOptions& options) {
  if (!(eps > 0.0)) throw Error(Errc::OutOfRange, "eps must be positive");
  if (!grid.covers_cone(data.R)) throw Error(Errc::OutOfRange, "grid does not cover the light cone");
  if (grid.courant() > 1.0) throw Error(Errc::CflViolation, "dt/dx > 1");
  if (options.store_stride < 0) throw Error(Errc::OutOfRange, "store_stride must be >= 0");

  const int nx = grid.nx;
  const double dx = grid.dx;
  const double dt = grid.dt;
  const double R = data.R;
  const bool quasi = spec.is_quasilinear();

  FdResult result;
  double initial_amp = 0.0;
  for (int j = 0; j < nx; ++j) {
    const double x = grid.x(j);
    initial_amp = std::max({initial_amp, std::fabs(eps * data.f.eval(x, R)), std::fabs(eps * data.g.eval(x, R))});
  }
  result.threshold =
      options.blowup_threshold > 0.0 ? options.blowup_threshold : 1e3 * eps * free_sup_norm(data);
  if (!(result.threshold > initial_amp))
    throw Error(Errc::OutOfRange, "blowup threshold must exceed the initial amplitude");

  if (options.store_stride > 0) {
    Grid stored = grid;
    stored.dt = grid.dt * options.store_stride;
    stored.nt = (grid.nt - 1) / options.store_stride + 1;
    stored.t_max = (stored.nt - 1) * stored.dt;
    result.field = Field(stored);
  }

  // Rolling rows u^{n-1}, u^n, u^{n+1} and time derivatives at n, n+1.
  std::vector<double> u_m1(nx, 0.0), u_n(nx, 0.0), u_p1(nx, 0.0);
  std::vector<double> ut_n(nx, 0.0), ut_p1(nx, 0.0);

  auto emit = [&](int n, const std::vector<double>& row) {
    if (options.store_stride > 0 && n % options.store_stride == 0) {
      const int k = n / options.store_stride;
      std::copy(row.begin(), row.end(), result.field.row(k).begin());
      result.field.set_valid_up_to(k);
    }
    if (options.on_snapshot && options.snapshot_stride > 0 && n % options.snapshot_stride == 0)
      options.on_snapshot(grid.t(n), grid, row);
  };

  // Level 0.
  for (int j = 0; j < nx; ++j) {
    const double x = grid.x(j);
    u_n[j] = eps * data.f.eval(x, R);
    ut_n[j] = eps * data.g.eval(x, R);
  }
  emit(0, u_n);
  result.final_row = u_n;
  result.final_ut = ut_n;
  result.final_time = 0.0;
  if (grid.nt == 1) return result;

  // Level 1 from the Taylor expansion with u_tt(0) taken from the equation.
  for (int j = 0; j < nx; ++j) {
    const double x = grid.x(j);
    const double u0 = u_n[j];
    const double ut0 = ut_n[j];
    const double ux0 = eps * data.f.eval(x, R, 1);
    const double uxx0 = eps * data.f.eval(x, R, 2);
    const double utx0 = eps * data.g.eval(x, R, 1);
    if (quasi) check_hyperbolic(spec, u0, ut0, ux0, grid.courant(), 0.0);
    const double utt0 =
        (1.0 + spec.b(u0, ut0, ux0)) * uxx0 + 2.0 * spec.a0(u0, ut0, ux0) * utx0 + spec.force(u0, ut0, ux0);
    u_p1[j] = u0 + dt * ut0 + 0.5 * dt * dt * utt0;
  }
  for (int j = 0; j < nx; ++j) ut_p1[j] = 2.0 * (u_p1[j] - u_n[j]) / dt - ut_n[j];

  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx = 0.5 / dx;

  for (int n = 1;; ++n) {
    // Promote n+1 -> n.
    std::swap(u_m1, u_n);
    std::swap(u_n, u_p1);
    std::swap(ut_n, ut_p1);

    if (options.track_energy) result.energy.push_back(leapfrog_energy(u_m1, u_n, dx, dt));

    // Everything outside the active range of row n is exactly zero.
    const ActiveRange cur = active_range(grid, grid.t(n), R);
    bool finite = true;
    double peak = 0.0;
    for (int j = cur.lo; j <= cur.hi; ++j) {
      if (!std::isfinite(u_n[j]) || !std::isfinite(ut_n[j])) finite = false;
      peak = std::max({peak, std::fabs(u_n[j]), std::fabs(ut_n[j])});
    }
    if (!finite || peak > result.threshold) {
      result.blowup_time = grid.t(n);
      if (finite) {
        emit(n, u_n);
        result.final_row = u_n;
        result.final_ut = ut_n;
        result.final_time = grid.t(n);
      }
      return result;
    }
    emit(n, u_n);
    result.final_row = u_n;
    result.final_ut = ut_n;
    result.final_time = grid.t(n);
    if (n + 1 >= grid.nt) return result;

    // The recycled buffers held older rows whose active ranges are nested
    // inside this one, so only the active range needs writing.
    const ActiveRange act = active_range(grid, grid.t(n + 1), R);
    for (int j = act.lo; j <= act.hi; ++j) {
      const double u = u_n[j];
      const double ux = (u_n[j + 1] - u_n[j - 1]) * inv_2dx;
      const double uxx = (u_n[j + 1] - 2.0 * u + u_n[j - 1]) * inv_dx2;
      const double ut_back = ut_n[j];
      double linear = uxx;
      if (quasi) {
        check_hyperbolic(spec, u, ut_back, ux, grid.courant(), grid.t(n));
        const double utx = (ut_n[j + 1] - ut_n[j - 1]) * inv_2dx;
        linear += spec.b(u, ut_back, ux) * uxx + 2.0 * spec.a0(u, ut_back, ux) * utx;
      }
      // F sees the centered u_t = (u^{n+1} - u^{n-1}) / (2 dt); solve the
      // scalar equation z = z_lin + dt/2 F(u, z, u_x) by fixed-point iteration.
      const double base = 2.0 * u - u_m1[j] + dt * dt * linear;
      const double z_lin = (base - u_m1[j]) / (2.0 * dt);
      double z = ut_back;
      for (int it = 0; it < kMaxInner; ++it) {
        const double z_new = z_lin + 0.5 * dt * spec.force(u, z, ux);
        const bool done = std::fabs(z_new - z) <= 1e-15 * (1.0 + std::fabs(z_new));
        z = z_new;
        if (done || !std::isfinite(z)) break;
      }
      u_p1[j] = u_m1[j] + 2.0 * dt * z;
    }
    for (int j = act.lo; j <= act.hi; ++j) ut_p1[j] = (3.0 * u_p1[j] - 4.0 * u_n[j] + u_m1[j]) / (2.0 * dt);
  }
}

}  // namespace wavelife
