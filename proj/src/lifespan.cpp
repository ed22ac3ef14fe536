#include "wavelife/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelife/error.hpp"
#include "wavelife/fd_solver.hpp"
#include "wavelife/parallel.hpp"

namespace wavelife {

Extrapolation richardson(std::span<const LevelResult> levels) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (levels.empty()) return {0.0, nan};
  const double finest = levels.back().detected_T;
  if (levels.size() < 3) return {finest, nan};

  const double t1 = levels[levels.size() - 3].detected_T;
  const double t2 = levels[levels.size() - 2].detected_T;
  const double t3 = finest;
  const double d1 = t1 - t2;
  const double d2 = t2 - t3;
  if (d2 == 0.0) return {t3, nan};
  if (!(d1 * d2 > 0.0) || !(std::fabs(d2) < std::fabs(d1))) return {t3, nan};
  const double order = std::clamp(std::log2(d1 / d2), 0.5, 4.0);
  return {t3 - d2 / (std::exp2(order) - 1.0), order};
}

LifespanRecord estimate_lifespan(const NonlinearitySpec& spec, const InitialData& data, double eps,
                                 const LifespanOptions& options) {
  if (options.levels < 2) throw Error(Errc::OutOfRange, "lifespan estimation needs at least two levels");
  if (!(options.trust_tol > 0.0)) throw Error(Errc::OutOfRange, "trust_tol must be positive");
  if (!(options.budget > 0.0)) throw Error(Errc::OutOfRange, "the time budget must be positive");

  // Levels whose grids exceed the cell budget are dropped from the fine end.
  std::vector<Grid> grids;
  for (int l = 0; l < options.levels; ++l) {
    const Grid g = Grid::make(options.dx / std::exp2(l), options.courant, options.budget, data.R);
    if (static_cast<double>(g.nx) * g.nt > options.max_cells) {
      if (l == 0) throw Error(Errc::BudgetExhausted, "the coarsest level exceeds max_cells");
      break;
    }
    grids.push_back(g);
  }

  LifespanRecord rec;
  rec.eps = eps;
  rec.levels.resize(grids.size());
  parallel_for(grids.size(), options.workers, [&](std::size_t l) {
    FdOptions fd;
    fd.store_stride = 0;
    fd.blowup_threshold = options.blowup_threshold;
    const FdResult res = fd_solve(spec, data, eps, grids[l], fd);
    rec.levels[l] = {grids[l].dx, res.blowup_time.value_or(grids[l].t_max), res.blowup_time.has_value()};
  });

  const bool any = std::any_of(rec.levels.begin(), rec.levels.end(), [](const LevelResult& l) { return l.blew_up; });
  const bool all = std::all_of(rec.levels.begin(), rec.levels.end(), [](const LevelResult& l) { return l.blew_up; });
  const double finest = rec.levels.back().detected_T;

  if (!any) {
    rec.censored = true;
    rec.extrapolated_T = finest;
    rec.observed_order = std::numeric_limits<double>::quiet_NaN();
    rec.rel_spread = 0.0;
    rec.trusted = false;
    return rec;
  }

  const auto ex = richardson(rec.levels);
  rec.extrapolated_T = all ? ex.value : finest;
  rec.observed_order = all ? ex.order : std::numeric_limits<double>::quiet_NaN();
  const double next = rec.levels[rec.levels.size() - 2].detected_T;
  rec.rel_spread = std::fabs(finest - next) / finest;
  rec.trusted = all && rec.levels.size() >= 2 && rec.rel_spread <= options.trust_tol;
  return rec;
}

}  // namespace wavelife
