#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wavelife/lifespan.hpp"
#include "wavelife/model.hpp"
#include "wavelife/picard.hpp"
#include "wavelife/sweep.hpp"

namespace wavelife {

enum class SolverKind { Fd, Picard };

/// Everything one JSON run document can set. Missing keys keep these defaults.
struct RunConfig {
  NonlinearitySpec spec = NonlinearitySpec::linear();
  InitialData data{Profile{ProfileKind::Bump, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 1.0};

  double dx = 0.01;
  double courant = 0.5;
  double t_max = 10.0;

  double eps = 0.5;
  SolverKind solver = SolverKind::Fd;
  double tol = 0.0;  // Picard; zero selects the solver default
  int max_iter = 50;
  double blowup_threshold = 0.0;
  int norms_K = 2;

  // sweep section
  std::vector<double> eps_values = geometric_eps(0.8, 0.8, 8);
  int levels = 3;
  double trust_tol = 0.05;
  double verdict_tol = 0.20;
  double budget = 100.0;
  double max_cells = 5e10;
  std::optional<SyntheticMode> synthetic;

  Grid grid() const { return Grid::make(dx, courant, t_max, data.R); }
  SweepConfig sweep_config(unsigned workers) const;
};

/// Parses a run document. Failures throw Error(Errc::Config) whose message
/// names the source, the line for syntax errors, and the offending field path.
RunConfig parse_config(std::string_view text, std::string_view source = "<string>");
RunConfig load_config(const std::filesystem::path& path);

/// The inverse of parse_config for the term and data sections.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace wavelife
