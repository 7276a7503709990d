#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

// Shared numerical kernels: quadrature, finite-difference derivatives,
// a symmetric tridiagonal eigensolver and a complex tridiagonal solve.
namespace mwell::num {

using Fn = std::function<double(double)>;

// Adaptive Simpson quadrature with an absolute tolerance.
// Throws std::runtime_error if the recursion depth limit is hit
// before the tolerance is met.
double integrate(const Fn& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 60);

// Composite Simpson on a uniform grid with `intervals` subintervals
// (intervals must be even).
double composite_simpson(const Fn& f, double a, double b, int intervals);

// Simpson weights for `points` uniformly spaced nodes (points odd),
// already scaled by the step for a unit-length interval [a, b].
std::vector<double> simpson_weights(int points, double a, double b);

// First/second derivative: 5-point central stencils of order h^4,
// Richardson-extrapolated once (h and h/2) to order h^6.
double derivative1(const Fn& f, double x, double h = 1e-4);
double derivative2(const Fn& f, double x, double h = 1e-4);

// Lowest k eigenvalues of the symmetric tridiagonal matrix with
// diagonal `diag` and off-diagonal `off` (Sturm count + bisection).
std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                       std::span<const double> off, int k);

// Solves (tridiagonal with constant off-diagonal `off`) x = rhs in place.
void solve_tridiagonal(std::span<const std::complex<double>> diag,
                       std::complex<double> off,
                       std::span<std::complex<double>> rhs);

}  // namespace mwell::num
