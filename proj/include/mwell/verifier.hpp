#pragma once

#include <complex>
#include <vector>

#include "mwell/boundary_law.hpp"
#include "mwell/fixed_domain.hpp"
#include "mwell/time_assembly.hpp"

// Independent numerical oracles. None of them assume the closed-form algebra
// they certify: the residual check differences the assembled solution against
// the PDE in physical coordinates, the spectrum check discretizes the fixed
// eigenproblem, and the propagation check time-steps the transformed frame.
namespace mwell {

struct GridSpec {
  int n_x = 256;
  int n_t = 256;
  double t0 = 0.0;
  double t1 = 0.25;
};

void validate_grid(const GridSpec& grid, const BoundaryLaw& law);

struct ResidualReport {
  // norms of R = -psi_xx + V psi - i psi_t, relative to the largest single
  // term of the equation on the same nodes (the absolute scale varies by
  // orders of magnitude across families)
  double residual_l2 = 0.0;
  double residual_max = 0.0;
  // log2 of the l2 ratio between the half-resolution and full grids;
  // NaN when the coarse level would fall below the minimum grid
  double order_estimate = 0.0;
  int n_x = 0, n_t = 0;
};

// Central-difference residual of the time-dependent equation on the moving
// domain. x is sampled as fixed fractions of L(t); the time derivative at
// fixed x is chain-rule corrected along lines of constant x/L so that no
// stencil point leaves the domain. Interior margin is 3 spatial steps for
// singular families, 1 otherwise.
ResidualReport tdse_residual(const MovingSolution& sol, const GridSpec& grid);

// max over the residual grid of the mutated/unmutated residual ratio with
// everything else fixed; the falsification figure of merit
double mutation_residual_ratio(const MovingSolution& sol, const GridSpec& grid,
                               Mutation mut);

// Lowest k eigenvalues of -d2/dq2 + V on (0,1) with Dirichlet walls:
// 3-point discretization on interior nodes i/n_x, Richardson-extrapolated
// from resolutions n_x/2 and n_x. Requires n_x >= 200, k <= 10.
std::vector<double> fd_spectrum(const PotentialModel& model, int n_x, int k);

struct PropagationReport {
  double l2_error = 0.0;    // against the analytic solution at t1
  double norm_drift = 0.0;  // max deviation of the discrete norm over all steps
  std::vector<double> x;                     // physical grid at t1
  std::vector<std::complex<double>> psi;     // propagated field at t1
};

// Crank-Nicolson propagation of the transformed field chi on the fixed unit
// interval with the static potential, stepped by the nonuniform clock
// increments tau(t_{j+1}) - tau(t_j), then mapped back through the gauge
// phase. The propagated field is compared against `initial` evolved
// analytically to t1. Rejects case1 composites (no separable frame there).
PropagationReport propagate_cn(const PotentialModel& model, const BoundaryLaw& law,
                               const MovingSolution& initial, const GridSpec& grid);

// max |Gram - I| of the first k assembled modes over [0, L(t)], composite
// Simpson with at least 2001 nodes
double orthonormality(const PotentialModel& model, const BoundaryLaw& law,
                      double t, int k);

}  // namespace mwell
