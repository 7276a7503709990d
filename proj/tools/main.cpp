#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mwell/cli.hpp"

namespace {

// --output is resolved against MWELL_OUTPUT_DIR when relative
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("MWELL_OUTPUT_DIR");
  if (dir && p.is_relative()) return std::filesystem::path(dir) / p;
  return p;
}

int run(const mwell::cli::RunConfig& cfg, const std::string& output,
        int (*cmd)(const mwell::cli::RunConfig&, std::ostream&)) {
  if (output.empty()) return cmd(cfg, std::cout);
  const auto path = resolve_output(output);
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return 2;
  }
  return cmd(cfg, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-boundary quantum well toolkit"};
  app.require_subcommand(1);

  mwell::cli::RunConfig cfg;
  std::string output;
  std::string mutate = "none";
  std::string config_file;

  const std::string sub_name = argc > 1 ? argv[1] : "";
  if (sub_name == "eval") {
    // coarse kinematic grid over one time unit
    cfg.grid = {64, 16, 0.0, std::numeric_limits<double>::quiet_NaN()};
  }

  // values from a config file sit between built-in defaults and flags
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config")
        mwell::cli::apply_json_config(cfg, argv[i + 1]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family,
                    "potential family: well, susy1, susy2-j0, susy2-j1");
    sub->add_option("--law", cfg.law_spec,
                    "boundary law, e.g. case1:1,0,1 or linear:1,0.5");
    sub->add_option("--horizon", cfg.horizon, "law validity horizon (default 10)");
    sub->add_option("--config", config_file, "JSON config file");
    sub->add_option("--output", output,
                    "output file (relative paths honor MWELL_OUTPUT_DIR)");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "closed-form vs finite-difference energies");
  add_common(spectrum);
  spectrum->add_option("-k,--levels", cfg.k, "number of levels (default 5)");
  spectrum->add_option("--nx", cfg.spectrum_nx,
                       "eigensolver resolution (default 2000)");

  CLI::App* eval = app.add_subcommand(
      "eval", "emit CSV rows (t, x, Re psi, Im psi, |psi|^2, V)");
  add_common(eval);
  eval->add_option("--modes", cfg.modes, "mode indices of the packet (default lowest)")
      ->delimiter(',');
  eval->add_option("--nx", cfg.grid.n_x, "spatial samples per time slice");
  eval->add_option("--nt", cfg.grid.n_t, "time slices");
  eval->add_option("--t0", cfg.grid.t0, "first time");
  eval->add_option("--t1", cfg.grid.t1, "last time");

  CLI::App* verify = app.add_subcommand(
      "verify", "run residual/spectrum/orthonormality/darboux/propagation checks");
  add_common(verify);
  verify->add_flag("--all", cfg.all_families, "verify every family");
  verify->add_option("--mutate", mutate,
                     "falsification mode: no-pi2, ldot-for-lddot or no-logL");
  verify->add_option("--nx", cfg.grid.n_x, "residual grid size (default 256)");
  verify->add_option("--nt", cfg.grid.n_t, "residual time steps (default 256)");
  verify->add_option("--t0", cfg.grid.t0, "residual window start");
  verify->add_option("--t1", cfg.grid.t1, "residual window end");
  verify->add_option("--tol-residual", cfg.tol_residual, "relative residual bound");
  verify->add_option("--tol-spectrum", cfg.tol_spectrum_regular,
                     "spectrum tolerance, regular families");
  verify->add_option("--tol-spectrum-singular", cfg.tol_spectrum_singular,
                     "spectrum tolerance, singular families");
  verify->add_option("--tol-ortho", cfg.tol_ortho, "Gram deviation bound");
  verify->add_option("--tol-cn", cfg.tol_cn, "propagation error bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.mutation = mwell::mutation_from_name(mutate);
    if (std::isnan(cfg.grid.t1)) cfg.grid.t1 = std::min(1.0, cfg.horizon);

    if (spectrum->parsed()) return run(cfg, output, mwell::cli::cmd_spectrum);
    if (eval->parsed()) return run(cfg, output, mwell::cli::cmd_eval);
    return run(cfg, output, mwell::cli::cmd_verify);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
