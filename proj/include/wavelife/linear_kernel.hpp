#pragma once

#include "wavelife/model.hpp"

namespace wavelife {

enum class Region { InteriorD, ExteriorDprime };

/// Node masks for the interior cone D = {t - |x| >= R} and the exterior
/// band D' = {|x| <= t + R} \ D.
struct ConeMask {
  Grid grid;
  double R = 1.0;
  Region region = Region::InteriorD;

  bool contains(int n, int j) const noexcept;
  static bool in_interior(double x, double t, double R) noexcept;
  static bool in_exterior(double x, double t, double R) noexcept;
};

/// Integral of g over [a, b], by composite Gauss-Legendre on supp g restricted to [a, b].
double integrate_g(const InitialData& data, double a, double b);

/// eps * u0(x, t), where u0 is the d'Alembert solution with data (f, g).
double free_solution(const InitialData& data, double eps, double x, double t);

/// eps * u0 sampled on every row of the grid.
Field free_field(const InitialData& data, double eps, const Grid& grid);

/// sup over (x, t) of |u0|, sampled on [-3R, 3R] x [0, 2R]; beyond t = 2R the
/// free solution only translates the values already reached.
double free_sup_norm(const InitialData& data);

/// L(v)(x, t) = 1/2 int_0^t ds int_{x-t+s}^{x+t-s} v(y, s) dy over the
/// backward light triangle: trapezoid in s, exact integration of the linear
/// interpolant in y. v is taken as zero outside the grid. Throws OutOfDomain.
double duhamel_point(const Field& v, double x, double t);

enum class DuhamelMethod {
  Auto,        // NullPrefix when dx/dt is an integer, Direct otherwise
  Direct,      // row-by-row sums, O(nt^2 nx)
  NullPrefix,  // running sums along characteristics, O(nt nx dx/dt)
};

/// L(v) at every node of v's grid. All methods produce the same discrete
/// operator; they differ only in summation order.
Field duhamel_slab(const Field& v, DuhamelMethod method = DuhamelMethod::Auto);

/// max over interior-cone nodes of |u0|. Throws NotZeroMean when g has nonzero mean.
double huygens_residual(const InitialData& data, const Grid& grid);

}  // namespace wavelife
