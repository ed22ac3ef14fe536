#include "wavelife/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelife/differences.hpp"
#include "wavelife/error.hpp"
#include "wavelife/linear_kernel.hpp"

namespace wavelife {
namespace {

void check_orders(int alpha, int beta0) {
  if (alpha < 1 || beta0 < alpha + 1 || beta0 >= 2 * alpha)
    throw Error(Errc::OutOfRange, "orders (alpha, beta0) = (" + std::to_string(alpha) + ", " + std::to_string(beta0) +
                                      ") violate alpha + 1 <= beta0 < 2 alpha");
}

double l2_row(std::span<const double> row, double dx) {
  double s = 0.0;
  const std::size_t m = row.size() - 1;
  for (std::size_t j = 0; j <= m; ++j) s += (j == 0 || j == m ? 0.5 : 1.0) * row[j] * row[j];
  return std::sqrt(s * dx);
}

}  // namespace

Rational weight_p(int alpha, int beta0) {
  check_orders(alpha, beta0);
  return Rational(2 * alpha - beta0, static_cast<std::int64_t>(beta0) * (alpha + 1));
}

double capital_r(double E, double T, int alpha, int beta0) {
  if (!(E >= 0.0) || !(T >= 0.0)) throw Error(Errc::OutOfRange, "R(E, T) needs E >= 0 and T >= 0");
  const double p = weight_p(alpha, beta0).to_double();
  return std::pow(E, alpha) * std::pow(1.0 + T, 1.0 + p) + std::pow(E, beta0) * std::pow(1.0 + T, 2.0 - beta0 * p);
}

Rational positivity_identity_check(int alpha, int beta0) {
  const Rational p = weight_p(alpha, beta0);
  const Rational lhs = Rational(1) - Rational(beta0 + 1) * p;
  const Rational rhs(static_cast<std::int64_t>(beta0 - alpha) * (2 + beta0), static_cast<std::int64_t>(alpha + 1) * beta0);
  if (lhs != rhs)
    throw Error(Errc::ConditionViolated, "positivity identity fails: " + lhs.str() + " != " + rhs.str());
  if (!(lhs > Rational(0))) throw Error(Errc::ConditionViolated, "-(beta0 + 1) p + 1 is not positive");
  return lhs;
}

NormReport norm_report(const Field& u, int alpha, std::optional<int> beta0, double R, double t_horizon, int K) {
  if (K < 0 || K > 2) throw Error(Errc::OutOfRange, "derivative cap K must lie in 0..2");
  const Grid& g = u.grid();

  NormReport rep;
  const bool weighted = beta0 && alpha >= 1 && *beta0 >= alpha + 1 && *beta0 < 2 * alpha;
  rep.p_weight = weighted ? weight_p(alpha, *beta0) : Rational(0);
  const double p = rep.p_weight.to_double();

  int last = u.valid_up_to();
  while (last >= 0 && g.t(last) > t_horizon + 1e-9 * std::max(1.0, t_horizon)) --last;
  rep.energy_norms.assign(K + 1, 0.0);
  if (last < 0) return rep;

  for (int n = 0; n <= last; ++n) {
    const double t = g.t(n);
    for (int j = 0; j < g.nx; ++j) {
      const double x = g.x(j);
      const double v = std::fabs(u.at(n, j));
      if (ConeMask::in_interior(x, t, R))
        rep.norm1 = std::max(rep.norm1, std::pow(1.0 + t + x, p) * v);
      else if (ConeMask::in_exterior(x, t, R))
        rep.norm2 = std::max(rep.norm2, v);
    }
  }

  // deriv[i][j] = d_t^i d_x^j u for 1 <= i + j <= K + 1.
  const int top = K + 1;
  std::vector<std::vector<Field>> deriv(top + 1, std::vector<Field>(top + 1));
  Field x_chain = u;
  for (int j = 0; j <= top; ++j) {
    if (j > 0) x_chain = diff_x(x_chain);
    Field t_chain = x_chain;
    for (int i = 0; i + j <= top; ++i) {
      if (i > 0) t_chain = diff_t(t_chain);
      if (i + j >= 1) deriv[i][j] = t_chain;
    }
  }

  double sup_total = 0.0;
  for (int n = 0; n <= last; ++n) {
    double total = 0.0;
    for (int k = 0; k <= K; ++k) {
      double e = 0.0;
      for (int a = 0; a <= k; ++a) {
        const int c = k - a;
        const double lt = l2_row(deriv[a + 1][c].row(n), g.dx);
        const double lx = l2_row(deriv[a][c + 1].row(n), g.dx);
        e += std::sqrt(lt * lt + lx * lx);
      }
      rep.energy_norms[k] = std::max(rep.energy_norms[k], e);
      total += e;
    }
    sup_total = std::max(sup_total, total);
  }
  rep.d_st = rep.norm1 + rep.norm2 + sup_total;
  if (weighted) rep.r_et = capital_r(rep.d_st, t_horizon, alpha, *beta0);
  return rep;
}

ProbeRun make_probe_run(const PicardReport& report, double eps, int alpha, std::optional<int> beta0, double R, int K) {
  if (report.iterates.empty()) throw Error(Errc::OutOfRange, "the Picard report kept no iterates");
  ProbeRun run;
  run.eps = eps;
  run.converged = report.converged;
  run.T = report.iterates.front().grid().t_max;
  for (const auto& it : report.iterates) run.iterate_norms.push_back(norm_report(it, alpha, beta0, R, run.T, K).d_st);
  return run;
}

ProbeSummary contraction_probe(const std::vector<ProbeRun>& runs, int alpha, int beta0) {
  if (runs.size() < 3) throw Error(Errc::InsufficientRuns, "the probe needs at least three runs");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].converged)
      throw Error(Errc::NonConverged, "run " + std::to_string(i) + " did not converge; refusing to fit");
    if (runs[i].iterate_norms.size() < 2)
      throw Error(Errc::InsufficientRuns, "run " + std::to_string(i) + " has no Picard steps");
  }

  ProbeSummary out;
  for (const auto& run : runs) {
    const auto& D = run.iterate_norms;
    const double E = *std::max_element(D.begin(), D.end());
    const double r = capital_r(E, run.T, alpha, beta0);
    const double gain = r + std::sqrt(r);
    double c = 0.0;
    for (std::size_t k = 0; k + 1 < D.size(); ++k) c = std::max(c, D[k + 1] / (run.eps + gain * (E + D[k])));
    out.per_run_C.push_back(c);
  }
  const auto [lo, hi] = std::minmax_element(out.per_run_C.begin(), out.per_run_C.end());
  out.C = *hi;
  out.spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  out.stable = out.spread <= 10.0;
  return out;
}

}  // namespace wavelife
