#include "wavelife/picard.hpp"

#include <algorithm>
#include <cmath>

#include "wavelife/differences.hpp"
#include "wavelife/error.hpp"

namespace wavelife {
namespace {

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double d = std::fabs(va[i] - vb[i]);
    if (!(d <= m)) m = d;  // propagates nan
  }
  return m;
}

bool all_finite(const Field& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Field picard_rhs(const NonlinearitySpec& spec, const Field& v) {
  const Field vt = diff_t(v);
  const Field vx = diff_x(v);
  Field out(v.grid());
  out.set_valid_up_to(v.valid_up_to());
  const auto u = v.values();
  const auto ut = vt.values();
  const auto ux = vx.values();
  auto o = out.values();
  for (std::size_t i = 0; i < u.size(); ++i) o[i] = spec.force(u[i], ut[i], ux[i]);
  if (spec.is_quasilinear()) {
    const Field vxx = diff_xx(v);
    const Field vtx = diff_x(vt);
    const auto uxx = vxx.values();
    const auto utx = vtx.values();
    for (std::size_t i = 0; i < u.size(); ++i)
      o[i] += spec.b(u[i], ut[i], ux[i]) * uxx[i] + 2.0 * spec.a0(u[i], ut[i], ux[i]) * utx[i];
  }
  return out;
}

Field picard_map(const NonlinearitySpec& spec, const InitialData& data, const Field& free, const Field& v,
                 DuhamelMethod method) {
  Field out = duhamel_slab(picard_rhs(spec, v), method);
  auto o = out.values();
  const auto f = free.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += f[i];
  clip_to_cone(out, data.R);
  return out;
}

PicardReport picard_solve(const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid,
                          const PicardOptions& options) {
  if (!(eps > 0.0)) throw Error(Errc::OutOfRange, "eps must be positive");
  if (options.tol < 0.0) throw Error(Errc::OutOfRange, "tol must be >= 0");
  if (options.max_iter < 1) throw Error(Errc::OutOfRange, "max_iter must be >= 1");
  if (!grid.covers_cone(data.R)) throw Error(Errc::OutOfRange, "grid does not cover the light cone");
  if (grid.nt < 3) throw Error(Errc::OutOfRange, "the slab needs at least three time rows");

  const Field free = free_field(data, eps, grid);
  PicardReport report;
  report.tol = options.tol > 0.0 ? options.tol : 1e-10 * std::max(1.0, free.sup_norm());

  Field current = free;
  if (options.keep_iterates) report.iterates.push_back(current);

  for (int k = 1; k <= options.max_iter; ++k) {
    Field next = picard_map(spec, data, free, current, options.method);
    const double diff = sup_diff(next, current);
    if (!std::isfinite(diff) || !all_finite(next)) {
      if (k == 1) throw Error(Errc::NonFinite, "the first Picard iterate overflowed");
      throw Error(Errc::Diverged, "Picard iterate " + std::to_string(k) + " overflowed");
    }
    report.sup_diffs.push_back(diff);
    report.iterations = k;
    current = std::move(next);
    if (options.keep_iterates) report.iterates.push_back(current);

    if (diff <= report.tol) {
      report.converged = true;
      break;
    }
    const auto& d = report.sup_diffs;
    const std::size_t s = d.size();
    if (s >= 4 && d[s - 1] > d[s - 2] && d[s - 2] > d[s - 3] && d[s - 3] > d[s - 4] && d[s - 1] > 10.0 * d[s - 4])
      throw Error(Errc::Diverged, "Picard step grew from " + std::to_string(d[s - 4]) + " to " +
                                      std::to_string(d[s - 1]) + " over three iterations");
  }
  report.final = std::move(current);
  return report;
}

double fixed_point_residual(const NonlinearitySpec& spec, const InitialData& data, double eps, const Field& u) {
  const Field free = free_field(data, eps, u.grid());
  return sup_diff(picard_map(spec, data, free, u), u);
}

}  // namespace wavelife
