#include "wavelife/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>

#include "wavelife/error.hpp"
#include "wavelife/io.hpp"
#include "wavelife/parallel.hpp"

namespace wavelife {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& eps_T) {
  const std::size_t n = eps_T.size();
  if (n < 3) throw Error(Errc::DegenerateInput, "need at least three (eps, T) points");
  std::set<double> seen;
  for (const auto& [eps, T] : eps_T) {
    if (!(eps > 0.0) || !(T > 0.0) || !std::isfinite(eps) || !std::isfinite(T))
      throw Error(Errc::DegenerateInput, "eps and T must be positive and finite");
    if (!seen.insert(eps).second) throw Error(Errc::DegenerateInput, "repeated eps value");
  }

  std::vector<double> X(n), Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X[i] = -std::log(eps_T[i].first);
    Y[i] = std::log(eps_T[i].second);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = Y[i] - (fit.intercept + fit.slope * X[i]);
    sse += r * r;
  }
  fit.stderr_slope = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

std::vector<double> geometric_eps(double eps_max, double ratio, int points) {
  if (!(eps_max > 0.0) || !(ratio > 0.0 && ratio < 1.0) || points < 1)
    throw Error(Errc::OutOfRange, "geometric eps needs eps_max > 0, 0 < ratio < 1, points >= 1");
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(eps_max * std::pow(ratio, k));
  return out;
}

std::vector<double> geometric_eps_between(double eps_max, double eps_min, int points) {
  if (!(eps_max > eps_min && eps_min > 0.0) || points < 2)
    throw Error(Errc::OutOfRange, "geometric eps needs eps_max > eps_min > 0 and points >= 2");
  std::vector<double> out = geometric_eps(eps_max, std::pow(eps_min / eps_max, 1.0 / (points - 1)), points);
  out.back() = eps_min;
  return out;
}

Verdict judge(const FitResult& fit, double predicted, int trusted, double eps_span, double tol) {
  if (trusted < 5 && eps_span < 10.0) return Verdict::Inconclusive;
  const double rel = std::fabs(fit.slope - predicted) / predicted;
  return rel <= tol && fit.r_squared >= 0.98 ? Verdict::Consistent : Verdict::Inconsistent;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.eps_values.size() < 5) throw Error(Errc::OutOfRange, "a sweep needs at least five eps values");
  for (double e : config.eps_values)
    if (!(e > 0.0)) throw Error(Errc::OutOfRange, "eps values must be positive");

  SweepResult result;
  result.spec_summary = config.spec.str();
  result.data_summary = "f = " + config.data.f.str() + ", g = " + config.data.g.str() +
                        ", R = " + std::to_string(config.data.R);
  result.eps_values = config.eps_values;
  result.verdict_tol = config.verdict_tol;
  result.records.resize(config.eps_values.size());

  if (config.synthetic) {
    const auto& s = *config.synthetic;
    for (std::size_t k = 0; k < config.eps_values.size(); ++k) {
      const double eps = config.eps_values[k];
      const double T = s.prefactor * std::pow(eps, -s.slope) * (1.0 + s.noise * (k % 2 == 0 ? 1.0 : -1.0));
      LifespanRecord& r = result.records[k];
      r.eps = eps;
      r.levels = {{0.0, T, true}};
      r.extrapolated_T = T;
      r.observed_order = std::numeric_limits<double>::quiet_NaN();
      r.rel_spread = 0.0;
      r.trusted = true;
    }
  } else {
    parallel_for(config.eps_values.size(), config.workers, [&](std::size_t k) {
      result.records[k] = estimate_lifespan(config.spec, config.data, config.eps_values[k], config.lifespan);
    });
  }

  std::vector<const LifespanRecord*> trusted;
  for (const auto& r : result.records)
    if (r.trusted) trusted.push_back(&r);
  result.trusted_count = static_cast<int>(trusted.size());
  if (trusted.size() < 3)
    throw Error(Errc::TooFewTrusted, std::to_string(trusted.size()) + " trusted records; at least 3 are needed");

  std::vector<std::pair<double, double>> points;
  for (const auto* r : trusted) points.emplace_back(r->eps, r->extrapolated_T);
  result.fit = fit_exponent(points);

  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  result.monotone = std::adjacent_find(points.begin(), points.end(), [](const auto& a, const auto& b) {
                      return b.second < a.second;
                    }) == points.end();

  result.prediction = predict(config.spec.alpha(), config.spec.beta0(), config.data.g_zero_mean());
  const double span = points.front().first / points.back().first;
  result.verdict = judge(result.fit, result.prediction.exponent.to_double(), result.trusted_count, span,
                         config.verdict_tol);
  return result;
}

void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  std::ofstream csv(dir / "sweep.csv");
  csv << "eps,dx_finest,T_detected,T_extrapolated,trusted\n";
  csv << std::setprecision(17);
  for (const auto& r : result.records) {
    const auto& finest = r.levels.back();
    csv << r.eps << ',' << finest.dx << ',' << finest.detected_T << ',' << r.extrapolated_T << ','
        << (r.trusted ? "true" : "false") << '\n';
  }

  nlohmann::json j = to_json(result);
  j["generated_at"] = utc_timestamp();
  std::ofstream(dir / "sweep.json") << j.dump(2) << '\n';

  std::ofstream dat(dir / "sweep.dat");
  dat << "# log(1/eps) log(T_extrapolated), trusted records only\n";
  dat << "# fitted slope " << std::setprecision(17) << result.fit.slope << " predicted "
      << result.prediction.exponent.str() << '\n';
  for (const auto& r : result.records)
    if (r.trusted) dat << -std::log(r.eps) << ' ' << std::log(r.extrapolated_T) << '\n';
}

}  // namespace wavelife
