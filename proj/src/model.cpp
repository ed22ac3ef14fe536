#include "wavelife/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "wavelife/error.hpp"

namespace wavelife {
namespace {

double ipow(double x, int n) noexcept {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double factor(double x, int power, bool absolute) noexcept {
  return ipow(absolute ? std::fabs(x) : x, power);
}

void validate_term(const Monomial& m, const char* list) {
  if (m.a < 0 || m.b < 0 || m.d < 0)
    throw Error(Errc::InvalidTerm, std::string(list) + " term " + m.str() + " has a negative power");
  if (m.degree() < 1)
    throw Error(Errc::InvalidTerm, std::string(list) + " term " + m.str() + " has total degree 0");
  if (!std::isfinite(m.coeff))
    throw Error(Errc::InvalidTerm, std::string(list) + " term has a non-finite coefficient");
}

int min_degree(const std::vector<Monomial>& terms) {
  int best = std::numeric_limits<int>::max();
  for (const auto& m : terms) best = std::min(best, m.degree());
  return best;
}

double sum_terms(const std::vector<Monomial>& terms, double u, double ut, double ux) noexcept {
  double s = 0.0;
  for (const auto& m : terms) s += m.eval(u, ut, ux);
  return s;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(Errc::NonFinite, std::string(what) + " overflowed");
  return v;
}

}  // namespace

double Monomial::eval(double u, double ut, double ux) const noexcept {
  return coeff * factor(u, a, abs[0]) * factor(ut, b, abs[1]) * factor(ux, d, abs[2]);
}

double Monomial::eval_abs(double u, double ut, double ux) const noexcept {
  return std::fabs(coeff) * ipow(std::fabs(u), a) * ipow(std::fabs(ut), b) * ipow(std::fabs(ux), d);
}

std::string Monomial::str() const {
  std::ostringstream os;
  os << coeff;
  const char* names[3] = {"u", "u_t", "u_x"};
  const int powers[3] = {a, b, d};
  for (int k = 0; k < 3; ++k) {
    if (powers[k] == 0) continue;
    os << '*';
    if (abs[k])
      os << '|' << names[k] << '|';
    else
      os << names[k];
    if (powers[k] > 1) os << '^' << powers[k];
  }
  return os.str();
}

std::vector<Monomial> canonicalize(std::vector<Monomial> terms) {
  using Key = std::tuple<int, int, int, bool, bool, bool>;
  std::map<Key, double> merged;
  for (auto m : terms) {
    // |x|^k == x^k for even k.
    if (m.a % 2 == 0) m.abs[0] = false;
    if (m.b % 2 == 0) m.abs[1] = false;
    if (m.d % 2 == 0) m.abs[2] = false;
    merged[{m.a, m.b, m.d, m.abs[0], m.abs[1], m.abs[2]}] += m.coeff;
  }
  std::vector<Monomial> out;
  out.reserve(merged.size());
  for (const auto& [key, coeff] : merged) {
    if (coeff == 0.0) continue;
    const auto& [a, b, d, abs_u, abs_ut, abs_ux] = key;
    out.push_back(Monomial{coeff, a, b, d, {abs_u, abs_ut, abs_ux}});
  }
  return out;
}

NonlinearitySpec NonlinearitySpec::classify(std::vector<Monomial> f_terms, std::vector<Monomial> b_terms,
                                            std::vector<Monomial> a0_terms) {
  for (const auto& m : f_terms) validate_term(m, "force");
  for (const auto& m : b_terms) validate_term(m, "b");
  for (const auto& m : a0_terms) validate_term(m, "a0");

  NonlinearitySpec spec;
  spec.f_ = canonicalize(std::move(f_terms));
  spec.b_ = canonicalize(std::move(b_terms));
  spec.a0_ = canonicalize(std::move(a0_terms));
  if (spec.f_.empty()) throw Error(Errc::EmptyForce, "the force F has no nonzero terms");

  int alpha = min_degree(spec.f_) - 1;
  if (!spec.b_.empty()) alpha = std::min(alpha, min_degree(spec.b_));
  if (!spec.a0_.empty()) alpha = std::min(alpha, min_degree(spec.a0_));
  if (alpha < 1)
    throw Error(Errc::DegenerateOrder, "alpha = " + std::to_string(alpha) + " (F must vanish to order >= 2)");
  spec.alpha_ = alpha;

  const auto pure = spec.pure_u_part();
  if (!pure.empty()) {
    const int beta0 = min_degree(pure) - 1;
    if (beta0 >= alpha + 1 && beta0 <= 2 * alpha - 1) spec.beta0_ = beta0;
  }
  return spec;
}

NonlinearitySpec NonlinearitySpec::linear() { return NonlinearitySpec{}; }

double NonlinearitySpec::force(double u, double ut, double ux) const noexcept { return sum_terms(f_, u, ut, ux); }
double NonlinearitySpec::b(double u, double ut, double ux) const noexcept { return sum_terms(b_, u, ut, ux); }
double NonlinearitySpec::a0(double u, double ut, double ux) const noexcept { return sum_terms(a0_, u, ut, ux); }

double NonlinearitySpec::force_abs(double u, double ut, double ux) const noexcept {
  double s = 0.0;
  for (const auto& m : f_) s += m.eval_abs(u, ut, ux);
  return s;
}

std::vector<Monomial> NonlinearitySpec::pure_u_part() const {
  std::vector<Monomial> out;
  std::copy_if(f_.begin(), f_.end(), std::back_inserter(out), [](const Monomial& m) { return m.pure_u(); });
  return out;
}

std::vector<Monomial> NonlinearitySpec::derivative_part() const {
  std::vector<Monomial> out;
  std::copy_if(f_.begin(), f_.end(), std::back_inserter(out), [](const Monomial& m) { return !m.pure_u(); });
  return out;
}

bool NonlinearitySpec::even_in_x() const noexcept {
  auto even = [](const std::vector<Monomial>& terms) {
    return std::all_of(terms.begin(), terms.end(), [](const Monomial& m) { return m.d % 2 == 0 || m.abs[2]; });
  };
  // a0 multiplies u_tx, which is odd in x, so any a0 term breaks the symmetry.
  return even(f_) && even(b_) && a0_.empty();
}

std::string NonlinearitySpec::str() const {
  auto join = [](const std::vector<Monomial>& terms) {
    if (terms.empty()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      s += terms[i].str();
    }
    return s;
  };
  std::string s = "F = " + join(f_);
  if (!b_.empty()) s += "; b = " + join(b_);
  if (!a0_.empty()) s += "; a0 = " + join(a0_);
  return s;
}

double eval_force(const NonlinearitySpec& spec, double u, double ut, double ux) {
  return checked(spec.force(u, ut, ux), "F");
}
double eval_b(const NonlinearitySpec& spec, double u, double ut, double ux) {
  return checked(spec.b(u, ut, ux), "b");
}
double eval_a0(const NonlinearitySpec& spec, double u, double ut, double ux) {
  return checked(spec.a0(u, ut, ux), "a0");
}
double eval_force_abs(const NonlinearitySpec& spec, double u, double ut, double ux) {
  return checked(spec.force_abs(u, ut, ux), "|F|");
}

// ---------------------------------------------------------------------------

double bump(double x, double R, int order) noexcept {
  const double s = x / R;
  if (!(std::fabs(s) < 1.0)) return 0.0;
  const double q = 1.0 - s * s;
  const double phi = std::exp(-1.0 / q);
  if (order == 0) return phi;
  // phi = exp(w), w = -1/q, q = 1 - x^2/R^2.
  const double q1 = -2.0 * x / (R * R);
  const double q2 = -2.0 / (R * R);
  const double w1 = q1 / (q * q);
  const double w2 = q2 / (q * q) - 2.0 * q1 * q1 / (q * q * q);
  const double w3 = -6.0 * q1 * q2 / (q * q * q) + 6.0 * q1 * q1 * q1 / (q * q * q * q);
  switch (order) {
    case 1: return phi * w1;
    case 2: return phi * (w2 + w1 * w1);
    case 3: return phi * (w3 + 3.0 * w1 * w2 + w1 * w1 * w1);
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

double Profile::eval(double x, double R, int order) const noexcept {
  switch (kind) {
    case ProfileKind::Zero: return 0.0;
    case ProfileKind::Bump: return amplitude * bump(x, R, order);
    case ProfileKind::BumpDerivative:
      // Needs one more derivative of the bump than requested.
      return order + 1 <= 3 ? amplitude * R * bump(x, R, order + 1) : std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

std::string Profile::str() const {
  std::ostringstream os;
  switch (kind) {
    case ProfileKind::Zero: return "zero";
    case ProfileKind::Bump: os << "bump"; break;
    case ProfileKind::BumpDerivative: os << "bump_derivative"; break;
  }
  if (amplitude != 1.0) os << "*" << amplitude;
  return os.str();
}

InitialData::InitialData(Profile f_profile, Profile g_profile, double support_radius)
    : f(f_profile), g(g_profile), R(support_radius) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw Error(Errc::OutOfRange, "support radius R must be >= 1");
  if (!std::isfinite(f.amplitude) || !std::isfinite(g.amplitude))
    throw Error(Errc::OutOfRange, "profile amplitudes must be finite");
}

// ---------------------------------------------------------------------------

Grid Grid::make(double dx, double courant, double t_max, double R) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw Error(Errc::OutOfRange, "dx must be positive");
  if (!(courant > 0.0 && courant <= 1.0)) throw Error(Errc::OutOfRange, "courant ratio must lie in (0, 1]");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw Error(Errc::OutOfRange, "t_max must be >= 0");
  if (!(R > 0.0)) throw Error(Errc::OutOfRange, "R must be positive");

  Grid g;
  g.dx = dx;
  g.dt = courant * dx;
  const long steps = std::lround(std::ceil(t_max / g.dt - 1e-9));
  g.nt = static_cast<int>(std::max(0L, steps)) + 1;
  g.t_max = static_cast<double>(g.nt - 1) * g.dt;
  // Two spare nodes beyond t + R + dx keep every stencil inside the array.
  g.origin = static_cast<int>(std::ceil((g.t_max + R + dx) / dx)) + 2;
  g.nx = 2 * g.origin + 1;
  g.x_min = g.x(0);
  g.x_max = g.x(g.nx - 1);
  return g;
}

bool Grid::covers_cone(double R) const noexcept {
  return x_min <= -(t_max + R + dx) && x_max >= t_max + R + dx;
}

Field::Field(Grid grid)
    : grid_(grid), data_(static_cast<std::size_t>(grid.nt) * static_cast<std::size_t>(grid.nx), 0.0) {}

double Field::sup_norm() const noexcept {
  double m = 0.0;
  for (int n = 0; n <= valid_up_to_; ++n)
    for (double v : row(n)) m = std::max(m, std::fabs(v));
  return m;
}

double cone_leakage(const Field& u, double R) {
  const Grid& g = u.grid();
  double leak = 0.0;
  for (int n = 0; n <= u.valid_up_to(); ++n) {
    const double edge = g.t(n) + R + 2.0 * g.dx;
    for (int j = 0; j < g.nx; ++j)
      if (std::fabs(g.x(j)) > edge) leak = std::max(leak, std::fabs(u.at(n, j)));
  }
  return leak;
}

}  // namespace wavelife
