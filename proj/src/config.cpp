#include "wavelife/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wavelife/error.hpp"

namespace wavelife {
namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw Error(Errc::Config, source_ + ": " + path + ": " + msg);
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
  }
  double positive(const json& j, const std::string& path) const {
    const double v = number(j, path);
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
  }
  int integer(const json& j, const std::string& path, int lo) const {
    if (!j.is_number_integer()) fail(path, "expected an integer, got " + std::string(j.type_name()));
    const auto v = j.get<long long>();
    if (v < lo || v > 1'000'000) fail(path, "out of range");
    return static_cast<int>(v);
  }
  const json& object(const json& j, const std::string& path) const {
    if (!j.is_object()) fail(path, "expected an object, got " + std::string(j.type_name()));
    return j;
  }

  // Unknown keys are mistakes more often than not.
  void only(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : j.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        fail(path.empty() ? k : path + "." + k, "unknown key");
  }

  Monomial term(const json& j, const std::string& path) const {
    object(j, path);
    only(j, path, {"coeff", "a", "b", "d", "abs"});
    Monomial m;
    if (j.contains("coeff")) m.coeff = number(j["coeff"], path + ".coeff");
    if (j.contains("a")) m.a = integer(j["a"], path + ".a", 0);
    if (j.contains("b")) m.b = integer(j["b"], path + ".b", 0);
    if (j.contains("d")) m.d = integer(j["d"], path + ".d", 0);
    if (j.contains("abs")) {
      const json& a = j["abs"];
      if (a.is_boolean()) {
        m.abs = {a.get<bool>() && m.a > 0, a.get<bool>() && m.b > 0, a.get<bool>() && m.d > 0};
      } else if (a.is_array() && a.size() == 3) {
        for (int k = 0; k < 3; ++k) {
          if (!a[k].is_boolean()) fail(path + ".abs[" + std::to_string(k) + "]", "expected a boolean");
          m.abs[k] = a[k].get<bool>();
        }
      } else {
        fail(path + ".abs", "expected a boolean or an array of three booleans");
      }
    }
    if (m.degree() < 1) fail(path, "a term needs a + b + d >= 1");
    return m;
  }

  std::vector<Monomial> terms(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array of terms");
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(term(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  Profile profile(const json& j, const std::string& path) const {
    Profile p;
    std::string kind;
    if (j.is_string()) {
      kind = j.get<std::string>();
    } else if (j.is_object()) {
      only(j, path, {"kind", "amp"});
      if (!j.contains("kind") || !j["kind"].is_string()) fail(path + ".kind", "expected a profile name");
      kind = j["kind"].get<std::string>();
      if (j.contains("amp")) p.amplitude = number(j["amp"], path + ".amp");
    } else {
      fail(path, "expected a profile name or {kind, amp}");
    }
    if (kind == "zero") p.kind = ProfileKind::Zero;
    else if (kind == "bump") p.kind = ProfileKind::Bump;
    else if (kind == "bump_derivative") p.kind = ProfileKind::BumpDerivative;
    else fail(path, "unknown profile '" + kind + "' (zero, bump, bump_derivative)");
    return p;
  }

 private:
  std::string source_;
};

json term_json(const Monomial& m) {
  return {{"coeff", m.coeff}, {"a", m.a}, {"b", m.b}, {"d", m.d}, {"abs", {m.abs[0], m.abs[1], m.abs[2]}}};
}

json profile_json(const Profile& p) {
  const char* kind = p.kind == ProfileKind::Zero ? "zero" : p.kind == ProfileKind::Bump ? "bump" : "bump_derivative";
  return {{"kind", kind}, {"amp", p.amplitude}};
}

}  // namespace

SweepConfig RunConfig::sweep_config(unsigned workers) const {
  SweepConfig s;
  s.spec = spec;
  s.data = data;
  s.eps_values = eps_values;
  s.lifespan.dx = dx;
  s.lifespan.courant = courant;
  s.lifespan.levels = levels;
  s.lifespan.trust_tol = trust_tol;
  s.lifespan.budget = budget;
  s.lifespan.blowup_threshold = blowup_threshold;
  s.lifespan.max_cells = max_cells;
  s.verdict_tol = verdict_tol;
  s.workers = workers;
  s.synthetic = synthetic;
  return s;
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  const std::string src(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(Errc::Config, src + ":" + std::to_string(line) + ": syntax error: " + e.what());
  }

  Reader r(src);
  r.object(doc, "(root)");
  r.only(doc, "",
         {"force", "b_coef", "a0_coef", "data", "grid", "eps", "solver", "tol", "max_iter", "blowup_threshold",
          "norms_K", "sweep", "synthetic", "comment"});

  RunConfig c;
  std::vector<Monomial> f, b, a0;
  if (doc.contains("force")) f = r.terms(doc["force"], "force");
  if (doc.contains("b_coef")) b = r.terms(doc["b_coef"], "b_coef");
  if (doc.contains("a0_coef")) a0 = r.terms(doc["a0_coef"], "a0_coef");
  try {
    c.spec = f.empty() && b.empty() && a0.empty() ? NonlinearitySpec::linear() : NonlinearitySpec::classify(f, b, a0);
  } catch (const Error& e) {
    r.fail("force", e.what());
  }

  if (doc.contains("data")) {
    const json& d = r.object(doc["data"], "data");
    r.only(d, "data", {"f", "g", "R"});
    Profile pf = c.data.f, pg = c.data.g;
    double R = c.data.R;
    if (d.contains("f")) pf = r.profile(d["f"], "data.f");
    if (d.contains("g")) pg = r.profile(d["g"], "data.g");
    if (d.contains("R")) R = r.number(d["R"], "data.R");
    try {
      c.data = InitialData(pf, pg, R);
    } catch (const Error& e) {
      r.fail("data", e.what());
    }
  }

  if (doc.contains("grid")) {
    const json& g = r.object(doc["grid"], "grid");
    r.only(g, "grid", {"dx", "courant", "t_max"});
    if (g.contains("dx")) c.dx = r.positive(g["dx"], "grid.dx");
    if (g.contains("courant")) {
      c.courant = r.positive(g["courant"], "grid.courant");
      if (c.courant >= 1.0) r.fail("grid.courant", "must lie in (0, 1)");
    }
    if (g.contains("t_max")) c.t_max = r.positive(g["t_max"], "grid.t_max");
  }

  if (doc.contains("eps")) c.eps = r.positive(doc["eps"], "eps");
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (s == "fd") c.solver = SolverKind::Fd;
    else if (s == "picard") c.solver = SolverKind::Picard;
    else r.fail("solver", "expected \"fd\" or \"picard\"");
  }
  if (doc.contains("tol")) c.tol = r.positive(doc["tol"], "tol");
  if (doc.contains("max_iter")) c.max_iter = r.integer(doc["max_iter"], "max_iter", 1);
  if (doc.contains("blowup_threshold")) c.blowup_threshold = r.positive(doc["blowup_threshold"], "blowup_threshold");
  if (doc.contains("norms_K")) {
    c.norms_K = r.integer(doc["norms_K"], "norms_K", 0);
    if (c.norms_K > 2) r.fail("norms_K", "derivative cap is 2");
  }

  if (doc.contains("sweep")) {
    const json& s = r.object(doc["sweep"], "sweep");
    r.only(s, "sweep",
           {"eps", "eps_max", "eps_min", "ratio", "points", "levels", "trust_tol", "verdict_tol", "budget", "max_cells"});
    if (s.contains("eps")) {
      if (!s["eps"].is_array()) r.fail("sweep.eps", "expected an array of numbers");
      c.eps_values.clear();
      for (std::size_t i = 0; i < s["eps"].size(); ++i)
        c.eps_values.push_back(r.positive(s["eps"][i], "sweep.eps[" + std::to_string(i) + "]"));
    } else if (s.contains("eps_max") || s.contains("eps_min") || s.contains("ratio") || s.contains("points")) {
      const double emax = s.contains("eps_max") ? r.positive(s["eps_max"], "sweep.eps_max") : 0.8;
      const int points = s.contains("points") ? r.integer(s["points"], "sweep.points", 2) : 8;
      try {
        if (s.contains("eps_min"))
          c.eps_values = geometric_eps_between(emax, r.positive(s["eps_min"], "sweep.eps_min"), points);
        else
          c.eps_values = geometric_eps(emax, s.contains("ratio") ? r.positive(s["ratio"], "sweep.ratio") : 0.8, points);
      } catch (const Error& e) {
        r.fail("sweep", e.what());
      }
    }
    if (s.contains("levels")) c.levels = r.integer(s["levels"], "sweep.levels", 2);
    if (s.contains("trust_tol")) c.trust_tol = r.positive(s["trust_tol"], "sweep.trust_tol");
    if (s.contains("verdict_tol")) c.verdict_tol = r.positive(s["verdict_tol"], "sweep.verdict_tol");
    if (s.contains("budget")) c.budget = r.positive(s["budget"], "sweep.budget");
    if (s.contains("max_cells")) c.max_cells = r.positive(s["max_cells"], "sweep.max_cells");
  }

  if (doc.contains("synthetic")) {
    const json& s = r.object(doc["synthetic"], "synthetic");
    r.only(s, "synthetic", {"slope", "prefactor", "noise"});
    SyntheticMode m;
    if (s.contains("slope")) m.slope = r.number(s["slope"], "synthetic.slope");
    if (s.contains("prefactor")) m.prefactor = r.positive(s["prefactor"], "synthetic.prefactor");
    if (s.contains("noise")) m.noise = r.number(s["noise"], "synthetic.noise");
    c.synthetic = m;
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Config, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

nlohmann::json config_to_json(const RunConfig& c) {
  json j;
  auto list = [](const std::vector<Monomial>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(term_json(m));
    return a;
  };
  j["force"] = list(c.spec.f_terms());
  j["b_coef"] = list(c.spec.b_terms());
  j["a0_coef"] = list(c.spec.a0_terms());
  j["data"] = {{"f", profile_json(c.data.f)}, {"g", profile_json(c.data.g)}, {"R", c.data.R}};
  j["grid"] = {{"dx", c.dx}, {"courant", c.courant}, {"t_max", c.t_max}};
  j["eps"] = c.eps;
  j["solver"] = c.solver == SolverKind::Fd ? "fd" : "picard";
  return j;
}

}  // namespace wavelife
