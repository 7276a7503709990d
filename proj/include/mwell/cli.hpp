#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwell/time_assembly.hpp"
#include "mwell/verifier.hpp"

namespace mwell::cli {

// One verification record; serialized as a CSV row by cmd_verify.
struct CheckRecord {
  std::string check;
  std::string family;
  std::string law;
  std::string detail;
  double l2 = 0.0;
  double max = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  bool pass = false;
};

struct RunConfig {
  std::string family = "well";
  bool all_families = false;
  std::string law_spec;  // "case1:l,m,n" or "linear:L0,v"; empty -> defaults
  double horizon = 10.0;
  std::vector<int> modes;  // empty -> lowest admissible mode
  GridSpec grid;
  int k = 5;              // spectrum levels
  int spectrum_nx = 2000;
  Mutation mutation = Mutation::None;

  double tol_spectrum_regular = 1e-4;
  double tol_spectrum_singular = 1e-2;
  double tol_residual = 1e-2;
  double order_lo = 1.7, order_hi = 2.3;
  double tol_ortho = 1e-8;
  double tol_cn = 2e-2;
  double tol_drift = 1e-10;
};

// "case1:1,0,1" / "linear:1,0.5" -> law valid on [0, horizon]
BoundaryLaw parse_law(const std::string& spec, double horizon);

// Applies a JSON config file on top of `cfg`. Recognized keys: family,
// law {kind, lambda, mu, nu | L0, v}, horizon, modes, grid {n_x, n_t, t0, t1},
// k, mutate, tolerances {...}.
void apply_json_config(RunConfig& cfg, const std::string& path);

// deterministic number formatting used for all emitted values
std::string fmt17(double v);

// Exit codes: 0 ok, 1 verification failure, 2 configuration error.
// Configuration errors are reported by throwing; the binary maps them to 2.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace mwell::cli
