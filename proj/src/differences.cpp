#include "wavelife/differences.hpp"

#include <cmath>

#include "wavelife/error.hpp"

namespace wavelife {

Field diff_t(const Field& u) {
  const Grid& g = u.grid();
  const int last = u.valid_up_to();
  if (last < 2) throw Error(Errc::OutOfRange, "time differences need at least three rows");
  Field out(g);
  const double inv = 1.0 / (2.0 * g.dt);
  for (int j = 0; j < g.nx; ++j) {
    out.at(0, j) = (-3.0 * u.at(0, j) + 4.0 * u.at(1, j) - u.at(2, j)) * inv;
    for (int n = 1; n < last; ++n) out.at(n, j) = (u.at(n + 1, j) - u.at(n - 1, j)) * inv;
    out.at(last, j) = (3.0 * u.at(last, j) - 4.0 * u.at(last - 1, j) + u.at(last - 2, j)) * inv;
  }
  out.set_valid_up_to(last);
  return out;
}

Field diff_x(const Field& u) {
  const Grid& g = u.grid();
  if (g.nx < 3) throw Error(Errc::OutOfRange, "space differences need at least three columns");
  Field out(g);
  const double inv = 1.0 / (2.0 * g.dx);
  const int m = g.nx - 1;
  for (int n = 0; n <= u.valid_up_to(); ++n) {
    const auto r = u.row(n);
    auto o = out.row(n);
    o[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) * inv;
    for (int j = 1; j < m; ++j) o[j] = (r[j + 1] - r[j - 1]) * inv;
    o[m] = (3.0 * r[m] - 4.0 * r[m - 1] + r[m - 2]) * inv;
  }
  out.set_valid_up_to(u.valid_up_to());
  return out;
}

Field diff_xx(const Field& u) {
  const Grid& g = u.grid();
  if (g.nx < 3) throw Error(Errc::OutOfRange, "space differences need at least three columns");
  Field out(g);
  const double inv = 1.0 / (g.dx * g.dx);
  const int m = g.nx - 1;
  for (int n = 0; n <= u.valid_up_to(); ++n) {
    const auto r = u.row(n);
    auto o = out.row(n);
    for (int j = 1; j < m; ++j) o[j] = (r[j + 1] - 2.0 * r[j] + r[j - 1]) * inv;
    o[0] = o[1];
    o[m] = o[m - 1];
  }
  out.set_valid_up_to(u.valid_up_to());
  return out;
}

void clip_to_cone(Field& u, double R) {
  const Grid& g = u.grid();
  for (int n = 0; n <= u.valid_up_to(); ++n) {
    const double edge = g.t(n) + R + g.dx;
    for (int j = 0; j < g.nx; ++j)
      if (std::fabs(g.x(j)) > edge + 1e-12) u.at(n, j) = 0.0;
  }
}

}  // namespace wavelife
