#pragma once

#include <string>
#include <vector>

#include "wavelife/model.hpp"

namespace wavelife {

// Refinement and self-consistency measurements shared by the `verify`
// subcommand and the acceptance harness.

/// max_n |E^{n+1/2} - E^{1/2}| / E^{1/2} for the free wave equation up to t_max.
double linear_energy_drift(const InitialData& data, double eps, double t_max, double dx);

/// log2(|u_h - u_{h/2}| / |u_{h/2} - u_{h/4}|) of the leapfrog solution at t_max,
/// sup norms over the coarse nodes.
double fd_observed_order(const NonlinearitySpec& spec, const InitialData& data, double eps, double t_max,
                         double dx);

/// sup |u_picard - u_fd| over the whole slab, for dx, dx/2, ... (`levels` values).
std::vector<double> picard_fd_discrepancy(const NonlinearitySpec& spec, const InitialData& data, double eps,
                                          double t_max, double dx, int levels);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant suite (a few seconds): Duhamel closed forms, linear energy
/// conservation, convergence order, positivity identity, combined exponent
/// consistency.
std::vector<Check> verify_suite();

}  // namespace wavelife
