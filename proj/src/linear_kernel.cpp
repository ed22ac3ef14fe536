#include "wavelife/linear_kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

#include "wavelife/error.hpp"

namespace wavelife {
namespace {

// Geometric slack for node classification.
constexpr double kSlack = 1e-12;

/// Cumulative trapezoid integral of one field row, starting at x_min.
void row_prefix(std::span<const double> v, double dx, std::vector<double>& out) {
  out.resize(v.size());
  out[0] = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) out[k] = out[k - 1] + 0.5 * dx * (v[k - 1] + v[k]);
}

/// Integral of the linear interpolant of v from x_min to y.
double prefix_at(std::span<const double> v, const std::vector<double>& prefix, double x_min, double dx, double y) {
  const double s = (y - x_min) / dx;
  if (s <= 0.0) return 0.0;
  const auto last = static_cast<double>(v.size() - 1);
  if (s >= last) return prefix.back();
  const auto k = static_cast<std::size_t>(s);
  const double theta = s - static_cast<double>(k);
  const double vy = v[k] + theta * (v[k + 1] - v[k]);
  return prefix[k] + 0.5 * theta * dx * (v[k] + vy);
}

Field direct_slab(const Field& v) {
  const Grid& g = v.grid();
  Field out(g);
  const int rows = v.valid_up_to() + 1;
  std::vector<std::vector<double>> prefix(rows);
  for (int m = 0; m < rows; ++m) row_prefix(v.row(m), g.dx, prefix[m]);

  for (int n = 0; n < rows; ++n) {
    for (int j = 0; j < g.nx; ++j) {
      const double x = g.x(j);
      double sum = 0.0;
      for (int m = 0; m < n; ++m) {
        const double w = m == 0 ? 0.5 * g.dt : g.dt;
        const double half = g.t(n) - g.t(m);
        const auto row = v.row(m);
        sum += w * (prefix_at(row, prefix[m], g.x_min, g.dx, x + half) -
                    prefix_at(row, prefix[m], g.x_min, g.dx, x - half));
      }
      out.at(n, j) = 0.5 * sum;
    }
  }
  out.set_valid_up_to(v.valid_up_to());
  return out;
}

// A_n(y) = sum_{m<n} w_m C_m(y + (n-m) dt) and B_n(y) = sum_{m<n} w_m C_m(y - (n-m) dt)
// live on a lattice of spacing dt and advance by one lattice shift per row.
Field null_prefix_slab(const Field& v, int ratio) {
  const Grid& g = v.grid();
  Field out(g);
  const int rows = v.valid_up_to() + 1;
  const int lattice = ratio * (g.nx - 1) + 1;
  std::vector<double> A(lattice, 0.0), B(lattice, 0.0), A_next(lattice), B_next(lattice);
  std::vector<double> c_row(lattice + 1);
  std::vector<double> prefix;
  double total = 0.0;  // A_n beyond x_max

  for (int n = 0; n < rows; ++n) {
    for (int j = 0; j < g.nx; ++j) out.at(n, j) = 0.5 * (A[std::size_t(ratio) * j] - B[std::size_t(ratio) * j]);
    if (n + 1 >= rows) break;

    const auto row = v.row(n);
    row_prefix(row, g.dx, prefix);
    for (int i = 0; i < lattice; ++i) c_row[i] = prefix_at(row, prefix, g.x_min, g.dx, g.x_min + i * g.dt);
    c_row[lattice] = prefix.back();
    const double w = n == 0 ? 0.5 * g.dt : g.dt;

    for (int i = 0; i < lattice; ++i) {
      const double a_shift = i + 1 < lattice ? A[i + 1] : total;
      A_next[i] = a_shift + w * c_row[i + 1];
      B_next[i] = i > 0 ? B[i - 1] + w * c_row[i - 1] : 0.0;
    }
    total += w * prefix.back();
    std::swap(A, A_next);
    std::swap(B, B_next);
  }
  out.set_valid_up_to(v.valid_up_to());
  return out;
}

}  // namespace

bool ConeMask::in_interior(double x, double t, double R) noexcept { return t - std::fabs(x) >= R - kSlack; }

bool ConeMask::in_exterior(double x, double t, double R) noexcept {
  return std::fabs(x) <= t + R + kSlack && !in_interior(x, t, R);
}

bool ConeMask::contains(int n, int j) const noexcept {
  const double x = grid.x(j);
  const double t = grid.t(n);
  return region == Region::InteriorD ? in_interior(x, t, R) : in_exterior(x, t, R);
}

double integrate_g(const InitialData& data, double a, double b) {
  if (data.g.kind == ProfileKind::Zero) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double lo = std::max(a, -data.R);
  const double hi = std::min(b, data.R);
  if (!(hi > lo)) return 0.0;
  // 64 ten-point panels across the full support converge the bump family to
  // roundoff; shorter intervals get proportionally fewer panels.
  const int panels = std::max(4, static_cast<int>(std::ceil(64.0 * (hi - lo) / (2.0 * data.R))));
  const double h = (hi - lo) / panels;
  auto g = [&](double y) { return data.g.eval(y, data.R); };
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double p0 = lo + k * h;
    const double p1 = k + 1 == panels ? hi : p0 + h;
    sum += boost::math::quadrature::gauss<double, 10>::integrate(g, p0, p1);
  }
  return sign * sum;
}

namespace {

// Once [x - t, x + t] covers the support the g integral no longer depends on
// (x, t); whole-grid loops pass it in instead of redoing the quadrature.
double free_value(const InitialData& data, double eps, double x, double t, double g_total) {
  const double f_part = 0.5 * (data.f.eval(x + t, data.R) + data.f.eval(x - t, data.R));
  const bool covers = x - t <= -data.R && x + t >= data.R;
  const double g_part = 0.5 * (covers ? g_total : integrate_g(data, x - t, x + t));
  return eps * (f_part + g_part);
}

}  // namespace

double free_solution(const InitialData& data, double eps, double x, double t) {
  const double f_part = 0.5 * (data.f.eval(x + t, data.R) + data.f.eval(x - t, data.R));
  const double g_part = 0.5 * integrate_g(data, x - t, x + t);
  return eps * (f_part + g_part);
}

Field free_field(const InitialData& data, double eps, const Grid& grid) {
  Field out(grid);
  const double total = integrate_g(data, -data.R, data.R);
  for (int n = 0; n < grid.nt; ++n)
    for (int j = 0; j < grid.nx; ++j) out.at(n, j) = free_value(data, eps, grid.x(j), grid.t(n), total);
  out.set_valid_up_to(grid.nt - 1);
  return out;
}

double free_sup_norm(const InitialData& data) {
  constexpr int kX = 241;
  constexpr int kT = 81;
  double m = 0.0;
  for (int i = 0; i < kT; ++i) {
    const double t = 2.0 * data.R * i / (kT - 1);
    for (int j = 0; j < kX; ++j) {
      const double x = -3.0 * data.R + 6.0 * data.R * j / (kX - 1);
      m = std::max(m, std::fabs(free_solution(data, 1.0, x, t)));
    }
  }
  return m;
}

double duhamel_point(const Field& v, double x, double t) {
  const Grid& g = v.grid();
  const double t_top = g.t(v.valid_up_to());
  if (!(t >= 0.0) || t > t_top + kSlack * std::max(1.0, t_top) || x < g.x_min - kSlack || x > g.x_max + kSlack)
    throw Error(Errc::OutOfDomain, "duhamel_point outside the computed slab");

  // Rows s_0..s_M at or below t, plus a partial interval [s_M, t] when t is off-grid.
  int M = static_cast<int>(std::floor(t / g.dt + 1e-9));
  M = std::min(M, v.valid_up_to());
  const bool on_grid = std::fabs(t - g.t(M)) <= 1e-9 * g.dt;

  std::vector<double> prefix;
  double sum = 0.0;
  const int last = on_grid ? M : M + 1;  // index of the top node s = t
  for (int m = 0; m < last && m <= M; ++m) {
    const double w_lo = m == 0 ? 0.5 * g.dt : g.dt;
    // The trapezoid weight of the last full row when t is off-grid mixes in half the partial interval.
    double w = w_lo;
    if (!on_grid && m == M) w = (m == 0 ? 0.0 : 0.5 * g.dt) + 0.5 * (t - g.t(M));
    const auto row = v.row(m);
    row_prefix(row, g.dx, prefix);
    const double half = t - g.t(m);
    sum += w * (prefix_at(row, prefix, g.x_min, g.dx, x + half) - prefix_at(row, prefix, g.x_min, g.dx, x - half));
  }
  return 0.5 * sum;
}

Field duhamel_slab(const Field& v, DuhamelMethod method) {
  const Grid& g = v.grid();
  const double ratio = g.dx / g.dt;
  const long r = std::lround(ratio);
  const bool integer_ratio = r >= 1 && std::fabs(ratio - static_cast<double>(r)) <= 1e-9 * ratio;
  if (method == DuhamelMethod::NullPrefix && !integer_ratio)
    throw Error(Errc::OutOfRange, "NullPrefix needs dx/dt to be an integer");
  if (v.valid_up_to() < 0) {
    Field out(g);
    return out;
  }
  if (method == DuhamelMethod::Direct || (method == DuhamelMethod::Auto && !integer_ratio)) return direct_slab(v);
  return null_prefix_slab(v, static_cast<int>(r));
}

double huygens_residual(const InitialData& data, const Grid& grid) {
  if (!data.g_zero_mean()) throw Error(Errc::NotZeroMean, "g has nonzero mean; the Huygens residual is undefined");
  const double total = integrate_g(data, -data.R, data.R);
  double worst = 0.0;
  for (int n = 0; n < grid.nt; ++n) {
    const double t = grid.t(n);
    if (t < data.R) continue;
    for (int j = 0; j < grid.nx; ++j) {
      const double x = grid.x(j);
      if (!ConeMask::in_interior(x, t, data.R)) continue;
      worst = std::max(worst, std::fabs(free_value(data, 1.0, x, t, total)));
    }
  }
  return worst;
}

}  // namespace wavelife
