#include "wavelife/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "wavelife/config.hpp"
#include "wavelife/error.hpp"
#include "wavelife/fd_solver.hpp"
#include "wavelife/io.hpp"
#include "wavelife/linear_kernel.hpp"
#include "wavelife/norms.hpp"
#include "wavelife/picard.hpp"
#include "wavelife/sweep.hpp"
#include "wavelife/theory.hpp"
#include "wavelife/verify.hpp"

namespace wavelife {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string out;
  unsigned workers = 0;
  int snapshot_stride = 0;
  long long seed = 0;  // reserved; nothing here is random
};

fs::path out_dir(const Globals& g) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv("WAVELIFE_OUT"); env && *env) return env;
  return "wavelife-out";
}

int cmd_theory(const std::string& file, std::ostream& out) {
  const RunConfig c = load_config(file);
  const auto& spec = c.spec;
  const bool zm = c.data.g_zero_mean();
  out << "spec: " << spec.str() << '\n';
  out << "alpha = " << spec.alpha() << ", beta0 = " << (spec.beta0() ? std::to_string(*spec.beta0()) : "none")
      << ", int g = 0: " << (zm ? "yes" : "no") << '\n';
  out << std::left << std::setw(18) << "regime" << std::setw(9) << "applies" << "exponent\n";
  for (const auto& line : regime_table(spec.alpha(), spec.beta0(), zm)) {
    out << std::setw(18) << regime_name(line.regime) << std::setw(9) << (line.applies ? "yes" : "no")
        << (line.applies ? line.exponent.str() : "-") << '\n';
  }
  const auto pred = predict(spec.alpha(), spec.beta0(), zm);
  out << "prediction: T(eps) >= C eps^-(" << pred.exponent.str() << "), regime " << regime_name(pred.regime) << '\n';
  if (const auto b = spec.beta0(); b && *b < 2 * spec.alpha()) {
    out << "improvement margin: " << improvement_margin(spec.alpha(), *b).str() << '\n';
    out << "weight p: " << weight_p(spec.alpha(), *b).str() << '\n';
    out << "-(beta0 + 1) p + 1: " << positivity_identity_check(spec.alpha(), *b).str() << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& file, const Globals& g, std::ostream& out) {
  const RunConfig c = load_config(file);
  const Grid grid = c.grid();
  const fs::path dir = out_dir(g);
  fs::create_directories(dir);

  std::ofstream snaps;
  auto write_row = [&](double t, const Grid& gr, std::span<const double> row) {
    for (int j = 0; j < gr.nx; ++j)
      if (std::fabs(gr.x(j)) <= t + c.data.R + gr.dx) snaps << t << ',' << gr.x(j) << ',' << row[j] << '\n';
  };
  if (g.snapshot_stride > 0) {
    snaps.open(dir / "snapshots.csv");
    snaps << "t,x,u\n" << std::setprecision(17);
  }

  nlohmann::json j;
  j["config"] = config_to_json(c);
  j["spec"] = to_json(c.spec);
  j["eps"] = c.eps;
  j["grid"] = {{"dx", grid.dx}, {"dt", grid.dt}, {"nx", grid.nx}, {"nt", grid.nt}, {"t_max", grid.t_max}};

  Field field;
  double horizon = 0.0;
  if (c.solver == SolverKind::Fd) {
    FdOptions opt;
    opt.blowup_threshold = c.blowup_threshold;
    // Keep at most ~2e7 stored nodes for the norm report.
    opt.store_stride = std::max(1, static_cast<int>(std::ceil(double(grid.nt) * grid.nx / 2e7)));
    if (g.snapshot_stride > 0) {
      opt.snapshot_stride = g.snapshot_stride;
      opt.on_snapshot = write_row;
    }
    FdResult r = fd_solve(c.spec, c.data, c.eps, grid, opt);
    j["solver"] = "fd";
    j["blowup_time"] = r.blowup_time ? nlohmann::json(*r.blowup_time) : nlohmann::json(nullptr);
    j["final_time"] = r.final_time;
    j["threshold"] = r.threshold;
    field = std::move(r.field);
    horizon = r.final_time;
    out << "fd: " << (r.blowup_time ? "blow-up detected at t = " + std::to_string(*r.blowup_time)
                                    : "reached t = " + std::to_string(r.final_time))
        << '\n';
  } else {
    PicardOptions opt;
    opt.tol = c.tol;
    opt.max_iter = c.max_iter;
    PicardReport r = picard_solve(c.spec, c.data, c.eps, grid, opt);
    j["solver"] = "picard";
    j["picard"] = {{"iterations", r.iterations}, {"converged", r.converged}, {"tol", r.tol}, {"sup_diffs", r.sup_diffs}};
    if (g.snapshot_stride > 0)
      for (int n = 0; n <= r.final.valid_up_to(); n += g.snapshot_stride) write_row(grid.t(n), grid, r.final.row(n));
    field = std::move(r.final);
    horizon = grid.t_max;
    out << "picard: " << r.iterations << " iterations, " << (r.converged ? "converged" : "not converged") << '\n';
  }

  const NormReport rep = norm_report(field, c.spec.alpha(), c.spec.beta0(), c.data.R, horizon, c.norms_K);
  j["norms"] = to_json(rep);
  j["generated_at"] = utc_timestamp();
  std::ofstream(dir / "run.json") << j.dump(2) << '\n';
  out << "D_ST = " << rep.d_st << ", norm1 = " << rep.norm1 << ", norm2 = " << rep.norm2 << '\n';
  out << "wrote " << (dir / "run.json").string() << '\n';
  return 0;
}

int cmd_sweep(const std::string& file, const Globals& g, std::ostream& out) {
  const RunConfig c = load_config(file);
  const SweepResult r = run_sweep(c.sweep_config(g.workers));
  const fs::path dir = out_dir(g);
  write_sweep_outputs(r, dir);

  out << std::setprecision(6);
  for (const auto& rec : r.records)
    out << "eps = " << rec.eps << "  T = " << rec.extrapolated_T << (rec.trusted ? "" : "  (untrusted)")
        << (rec.censored ? "  (censored)" : "") << '\n';
  out << "fitted slope " << r.fit.slope << " +- " << r.fit.stderr_slope << ", r^2 = " << r.fit.r_squared
      << ", predicted " << r.prediction.exponent.str() << " (" << regime_name(r.prediction.regime) << ")\n";
  out << "monotone: " << (r.monotone ? "yes" : "no") << ", trusted " << r.trusted_count << "/" << r.records.size()
      << '\n';
  out << "verdict: " << verdict_name(r.verdict) << '\n';
  out << "wrote " << dir.string() << "/sweep.{csv,json,dat}\n";
  return r.verdict == Verdict::Inconsistent ? 2 : 0;
}

int cmd_huygens(const std::string& file, std::ostream& out) {
  const RunConfig c = load_config(file);
  const double res = huygens_residual(c.data, c.grid());
  const bool ok = res <= 1e-10;
  out << "max |u0| over the interior cone: " << res << (ok ? "  ok" : "  FAILED (limit 1e-10)") << '\n';
  return ok ? 0 : 2;
}

int cmd_verify(std::ostream& out) {
  bool all = true;
  for (const auto& c : verify_suite()) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  return all ? 0 : 2;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lifespan experiments for 1D nonlinear wave equations", "wavelife"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output directory (default $WAVELIFE_OUT, then ./wavelife-out)");
  app.add_option("--workers", g.workers, "Worker threads for sweeps (0 = all cores)");
  app.add_option("--snapshot-stride", g.snapshot_stride, "Write (t, x, u) rows every k steps")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Reserved; no step is random");

  std::string file;
  auto* theory = app.add_subcommand("theory", "Regime table and exponents for a spec");
  theory->add_option("spec", file, "JSON spec")->required();
  auto* simulate = app.add_subcommand("simulate", "One solver run with a norm report");
  simulate->add_option("config", file, "JSON config")->required();
  auto* sweep = app.add_subcommand("sweep", "Lifespan sweep over eps and exponent fit");
  sweep->add_option("config", file, "JSON config")->required();
  auto* huygens = app.add_subcommand("huygens", "Free-solution residual inside the interior cone");
  huygens->add_option("config", file, "JSON config")->required();
  auto* verify = app.add_subcommand("verify", "Built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*theory) return cmd_theory(file, out);
    if (*simulate) return cmd_simulate(file, g, out);
    if (*sweep) return cmd_sweep(file, g, out);
    if (*huygens) return cmd_huygens(file, out);
    if (*verify) return cmd_verify(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace wavelife
