#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hermvar/cli.hpp"

namespace {

void add_execution_options(CLI::App* sub, hermvar::RunConfig& cfg) {
  sub->add_option("--seed", cfg.master_seed, "master seed for all random streams");
  sub->add_option("--workers", cfg.workers, "worker threads (0 = HERMVAR_WORKERS or hardware)");
  sub->add_option("--method", cfg.method, "path generator: circulant | cholesky");
  sub->add_option("--out", cfg.output_path, "result file; also writes <out>.manifest.json");
  sub->add_option("--format", cfg.format, "result file format: csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Hermite variations of fractional Brownian motion"};
  app.set_version_flag("--version",
                       std::string(hermvar::kToolName) + " " + hermvar::kToolVersion);
  app.set_config("--config", "", "read options from an INI file; flags override file values");
  app.require_subcommand(0, 1);

  std::string manifest_path;
  app.add_option("--from-manifest", manifest_path,
                 "replay the exact configuration recorded in a manifest file");

  hermvar::RunConfig cfg;
  std::string grid_text;

  CLI::App* simulate = app.add_subcommand("simulate", "sample fBm paths or statistic records");
  simulate->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  simulate->add_option("--n", cfg.n, "mesh size");
  simulate->add_option("--q", cfg.q, "Hermite order");
  simulate->add_option("--f", cfg.weight, "weight function label");
  simulate->add_option("--N", cfg.replicates, "replicates (with --stats)");
  simulate->add_option("--tol", cfg.tol, "variance-certification tolerance");
  simulate->add_flag("--stats", cfg.emit_stats,
                     "emit per-replicate records (F, G, corrections, limit scale)");
  add_execution_options(simulate, cfg);

  CLI::App* sigma = app.add_subcommand("sigma", "certified limiting variance sigma_sq(H, q)");
  sigma->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  sigma->add_option("--q", cfg.q, "Hermite order");
  sigma->add_option("--tol", cfg.tol, "certified truncation tolerance");
  add_execution_options(sigma, cfg);

  CLI::App* rate = app.add_subcommand("rate", "weak-distance decay over a dyadic n grid");
  rate->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  rate->add_option("--q", cfg.q, "Hermite order");
  rate->add_option("--f", cfg.weight, "weight function label");
  rate->add_option("--phi", cfg.test_function, "bounded test function label");
  rate->add_option("--phi-scale", cfg.test_function_scale, "test function scale parameter");
  rate->add_option("--n-grid", grid_text, "grid: 'a:b[:dyadic]' or comma list")->required();
  rate->add_option("--N", cfg.replicates, "replicates (0 = noise-matched default)");
  rate->add_option("--tol", cfg.tol, "variance-certification tolerance");
  add_execution_options(rate, cfg);

  CLI::App* fngn = app.add_subcommand("fngn", "E|F_n - G_n| decay over a dyadic n grid");
  fngn->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  fngn->add_option("--q", cfg.q, "Hermite order");
  fngn->add_option("--f", cfg.weight, "weight function label");
  fngn->add_option("--n-grid", grid_text, "grid: 'a:b[:dyadic]' or comma list")->required();
  fngn->add_option("--N", cfg.replicates, "replicates");
  add_execution_options(fngn, cfg);

  CLI::App* bounds = app.add_subcommand("bounds", "covariance-sum scaling checks");
  bounds->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  bounds->add_option("--n-grid", grid_text, "grid: 'a:b[:dyadic]' or comma list")->required();
  bounds->add_option("--kind", cfg.bound_kind, "alpha | single | double | triple");
  bounds->add_option("--a", cfg.exponent_a, "power applied to |beta|");
  bounds->add_option("--b", cfg.exponent_b, "coupling power (triple sums)");
  add_execution_options(bounds, cfg);

  CLI::App* residual = app.add_subcommand("residual", "exact E[R_n^2] decay and slope");
  residual->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  residual->add_option("--n-grid", grid_text, "grid: 'a:b[:dyadic]' or comma list")->required();
  add_execution_options(residual, cfg);

  CLI::App* breuer = app.add_subcommand("breuer-major", "sample variance against sigma_sq");
  breuer->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  breuer->add_option("--q", cfg.q, "Hermite order");
  breuer->add_option("--n", cfg.n, "mesh size");
  breuer->add_option("--N", cfg.replicates, "replicates");
  breuer->add_option("--tol", cfg.tol, "variance-certification tolerance");
  add_execution_options(breuer, cfg);

  CLI::App* stable = app.add_subcommand("stable", "stable-convergence functional check");
  stable->add_option("--H", cfg.H, "Hurst parameter in (0,1)")->required();
  stable->add_option("--q", cfg.q, "Hermite order");
  stable->add_option("--n", cfg.n, "mesh size");
  stable->add_option("--f", cfg.weight, "weight function label");
  stable->add_option("--phi", cfg.test_function, "bounded test function label");
  stable->add_option("--phi-scale", cfg.test_function_scale, "test function scale parameter");
  stable->add_option("--g", cfg.stable_factor, "bounded factor applied to B_1");
  stable->add_option("--N", cfg.replicates, "replicates");
  stable->add_option("--tol", cfg.tol, "variance-certification tolerance");
  add_execution_options(stable, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!manifest_path.empty()) {
      if (!app.get_subcommands().empty()) {
        std::fprintf(stderr, "error: config: --from-manifest excludes subcommands\n");
        return 2;
      }
      std::ifstream in(manifest_path, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "error: io: cannot read manifest '%s'\n", manifest_path.c_str());
        return 4;
      }
      std::ostringstream text;
      text << in.rdbuf();
      return hermvar::run(hermvar::parse_manifest(text.str()));
    }

    if (app.get_subcommands().empty()) {
      std::fputs(app.help().c_str(), stderr);
      return 2;
    }
    for (const auto& [name, sub] :
         {std::pair<const char*, CLI::App*>{"simulate", simulate}, {"sigma", sigma},
          {"rate", rate}, {"fngn", fngn}, {"bounds", bounds}, {"residual", residual},
          {"breuer-major", breuer}, {"stable", stable}}) {
      if (sub->parsed()) cfg.subcommand = hermvar::subcommand_by_name(name);
    }
    if (!grid_text.empty()) cfg.n_grid = hermvar::parse_n_grid(grid_text);
    return hermvar::run(cfg);
  } catch (const hermvar::io_error& e) {
    std::fprintf(stderr, "error: io: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}
