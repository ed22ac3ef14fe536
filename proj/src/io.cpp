#include "wavelife/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace wavelife {
namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json terms(const std::vector<Monomial>& list) {
  auto arr = nlohmann::json::array();
  for (const auto& m : list)
    arr.push_back({{"coeff", m.coeff}, {"a", m.a}, {"b", m.b}, {"d", m.d}, {"abs", {m.abs[0], m.abs[1], m.abs[2]}}});
  return arr;
}

}  // namespace

nlohmann::json to_json(const Rational& r) {
  return {{"num", r.num()}, {"den", r.den()}, {"text", r.str()}, {"value", r.to_double()}};
}

nlohmann::json to_json(const NormReport& report) {
  nlohmann::json j;
  j["norm1"] = num(report.norm1);
  j["norm2"] = num(report.norm2);
  auto energy = nlohmann::json::array();
  for (double e : report.energy_norms) energy.push_back(num(e));
  j["energy_norms"] = energy;
  j["d_st"] = num(report.d_st);
  j["p_weight"] = to_json(report.p_weight);
  j["r_et"] = report.r_et ? num(*report.r_et) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const LifespanRecord& record) {
  nlohmann::json j;
  j["eps"] = record.eps;
  auto levels = nlohmann::json::array();
  for (const auto& l : record.levels)
    levels.push_back({{"dx", l.dx}, {"detected_T", l.detected_T}, {"blew_up", l.blew_up}});
  j["levels"] = levels;
  j["extrapolated_T"] = num(record.extrapolated_T);
  j["observed_order"] = num(record.observed_order);
  j["rel_spread"] = num(record.rel_spread);
  j["trusted"] = record.trusted;
  j["censored"] = record.censored;
  return j;
}

nlohmann::json to_json(const LifespanPrediction& prediction) {
  return {{"exponent", to_json(prediction.exponent)},
          {"regime", std::string(regime_name(prediction.regime))},
          {"conditions_used", prediction.conditions_used}};
}

nlohmann::json to_json(const NonlinearitySpec& spec) {
  nlohmann::json j;
  j["force"] = terms(spec.f_terms());
  j["b_coef"] = terms(spec.b_terms());
  j["a0_coef"] = terms(spec.a0_terms());
  j["alpha"] = spec.alpha();
  j["beta0"] = spec.beta0() ? nlohmann::json(*spec.beta0()) : nlohmann::json(nullptr);
  j["text"] = spec.str();
  return j;
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json j;
  j["spec"] = result.spec_summary;
  j["data"] = result.data_summary;
  j["eps_values"] = result.eps_values;
  auto records = nlohmann::json::array();
  for (const auto& r : result.records) records.push_back(to_json(r));
  j["records"] = records;
  j["fitted_slope"] = num(result.fit.slope);
  j["intercept"] = num(result.fit.intercept);
  j["slope_stderr"] = num(result.fit.stderr_slope);
  j["r_squared"] = num(result.fit.r_squared);
  j["trusted_count"] = result.trusted_count;
  j["monotone"] = result.monotone;
  j["predicted"] = to_json(result.prediction);
  j["predicted_exponent"] = result.prediction.exponent.to_double();
  j["verdict_tol"] = result.verdict_tol;
  j["verdict"] = std::string(verdict_name(result.verdict));
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace wavelife
