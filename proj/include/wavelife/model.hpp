#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wavelife {

// ---------------------------------------------------------------------------
// Nonlinearities
// ---------------------------------------------------------------------------

/// One term coeff * u^a * u_t^b * u_x^d. A set abs flag turns the matching
/// factor into |.|^power.
struct Monomial {
  double coeff = 1.0;
  int a = 0;  // power of u
  int b = 0;  // power of u_t
  int d = 0;  // power of u_x
  std::array<bool, 3> abs{false, false, false};

  int degree() const noexcept { return a + b + d; }
  bool pure_u() const noexcept { return b == 0 && d == 0; }

  double eval(double u, double ut, double ux) const noexcept;
  /// |coeff| * |u|^a |u_t|^b |u_x|^d, the majorant used for order checks.
  double eval_abs(double u, double ut, double ux) const noexcept;

  std::string str() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Nonlinearity F together with the quasilinear coefficients b and a0 of
/// u_tt - u_xx = b u_xx + 2 a0 u_tx + F. Built only through classify() or
/// linear(), so the derived orders always match the terms.
class NonlinearitySpec {
 public:
  /// Canonicalizes the term lists and derives alpha and beta0.
  /// Throws EmptyForce, DegenerateOrder, InvalidTerm.
  static NonlinearitySpec classify(std::vector<Monomial> f_terms, std::vector<Monomial> b_terms = {},
                                   std::vector<Monomial> a0_terms = {});

  /// The free wave equation (no terms). alpha() is 0 and beta0() is empty.
  static NonlinearitySpec linear();

  const std::vector<Monomial>& f_terms() const noexcept { return f_; }
  const std::vector<Monomial>& b_terms() const noexcept { return b_; }
  const std::vector<Monomial>& a0_terms() const noexcept { return a0_; }

  int alpha() const noexcept { return alpha_; }
  std::optional<int> beta0() const noexcept { return beta0_; }
  bool is_linear() const noexcept { return f_.empty() && b_.empty() && a0_.empty(); }
  bool is_quasilinear() const noexcept { return !b_.empty() || !a0_.empty(); }

  /// Unchecked evaluations; may return inf/nan on overflow.
  double force(double u, double ut, double ux) const noexcept;
  double b(double u, double ut, double ux) const noexcept;
  double a0(double u, double ut, double ux) const noexcept;
  double force_abs(double u, double ut, double ux) const noexcept;

  /// F(v,0): the pure-u part of the force.
  std::vector<Monomial> pure_u_part() const;
  /// The part of F carrying at least one derivative factor.
  std::vector<Monomial> derivative_part() const;

  /// Even in x when no term has an odd power of u_x.
  bool even_in_x() const noexcept;

  std::string str() const;

  friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;

 private:
  std::vector<Monomial> f_, b_, a0_;
  int alpha_ = 0;
  std::optional<int> beta0_;
};

/// Merges duplicate monomials, clears redundant abs flags on even powers,
/// drops zero coefficients, and sorts into a stable order.
std::vector<Monomial> canonicalize(std::vector<Monomial> terms);

/// Checked evaluations: throw Errc::NonFinite on inf/nan results.
double eval_force(const NonlinearitySpec& spec, double u, double ut, double ux);
double eval_b(const NonlinearitySpec& spec, double u, double ut, double ux);
double eval_a0(const NonlinearitySpec& spec, double u, double ut, double ux);
double eval_force_abs(const NonlinearitySpec& spec, double u, double ut, double ux);

// ---------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------

enum class ProfileKind { Zero, Bump, BumpDerivative };

/// Compactly supported C-infinity profiles on [-R, R]:
///   Bump:           amp * exp(-1 / (1 - (x/R)^2))
///   BumpDerivative: amp * R * d/dx of the bump above (exact zero mean)
struct Profile {
  ProfileKind kind = ProfileKind::Zero;
  double amplitude = 1.0;

  /// order-th derivative in x, order in 0..3.
  double eval(double x, double R, int order = 0) const noexcept;
  bool zero_mean() const noexcept { return kind != ProfileKind::Bump; }
  std::string str() const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

double bump(double x, double R, int order = 0) noexcept;

struct InitialData {
  Profile f;
  Profile g;
  double R = 1.0;

  /// Throws OutOfRange when R < 1 or amplitudes are not finite.
  InitialData(Profile f_profile, Profile g_profile, double support_radius);

  bool g_zero_mean() const noexcept { return g.zero_mean(); }

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

// ---------------------------------------------------------------------------
// Grids and fields
// ---------------------------------------------------------------------------

/// Uniform space-time grid with nodes x_j = (j - origin) dx, t_n = n dt.
/// Spatial extent always covers the light cone |x| <= t_max + R + dx.
struct Grid {
  double dx = 0.0;
  double dt = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double t_max = 0.0;
  int nx = 0;
  int nt = 0;  // number of time rows including t = 0
  int origin = 0;

  /// t_max is rounded up to a whole number of steps. Throws OutOfRange.
  static Grid make(double dx, double courant, double t_max, double R);

  double x(int j) const noexcept { return static_cast<double>(j - origin) * dx; }
  double t(int n) const noexcept { return static_cast<double>(n) * dt; }
  double courant() const noexcept { return dt / dx; }
  bool covers_cone(double R) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Discrete space-time slab u(t_n, x_j), row-major in time.
class Field {
 public:
  Field() = default;
  explicit Field(Grid grid);

  const Grid& grid() const noexcept { return grid_; }

  double& at(int n, int j) noexcept { return data_[index(n, j)]; }
  double at(int n, int j) const noexcept { return data_[index(n, j)]; }

  std::span<double> row(int n) noexcept { return {data_.data() + index(n, 0), std::size_t(grid_.nx)}; }
  std::span<const double> row(int n) const noexcept {
    return {data_.data() + index(n, 0), std::size_t(grid_.nx)};
  }

  /// Last computed row; -1 when nothing has been written.
  int valid_up_to() const noexcept { return valid_up_to_; }
  void set_valid_up_to(int n) noexcept { valid_up_to_ = n; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  double sup_norm() const noexcept;

 private:
  std::size_t index(int n, int j) const noexcept {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(grid_.nx) + static_cast<std::size_t>(j);
  }

  Grid grid_;
  std::vector<double> data_;
  int valid_up_to_ = -1;
};

/// Largest |u(i,j)| over rows <= valid_up_to at nodes with |x| > t + R + 2 dx.
/// Zero for every solver output.
double cone_leakage(const Field& u, double R);

}  // namespace wavelife
