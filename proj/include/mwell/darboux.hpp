#pragma once

#include <functional>
#include <utility>

#include "mwell/fixed_domain.hpp"

// First- and second-order SUSY / Darboux transformations acting on generic
// eigenpairs. Everything here is reconstructed from the seeds alone, so the
// module doubles as an independent oracle for the closed-form catalog.
// All functions are pure; evaluators capture immutable state.
namespace mwell::darboux {

using Fn = std::function<double(double)>;

// An eigenfunction seed with closed-form value and derivatives.
struct SeedMode {
  Fn f, df, ddf;
  double energy = 0.0;
};

SeedMode seed_from_mode(const StationaryMode& mode);

// w = -Q0'/Q0 for a nodeless ground state Q0; throws if Q0 changes sign
// on (0,1).
Fn superpotential_from_ground(const StationaryMode& ground);

// First-order intertwiner: partner potentials w^2 -+ w'.
class IntertwinerFirst {
 public:
  static IntertwinerFirst from_ground(const StationaryMode& ground);

  double w(double q) const { return w_(q); }
  double dw(double q) const { return dw_(q); }
  double potential_minus(double q) const { return w_(q) * w_(q) - dw_(q); }
  double potential_plus(double q) const { return w_(q) * w_(q) + dw_(q); }

 private:
  Fn w_, dw_;
};

// (d/dq + w) f, mapping level n+1 of the minus problem onto level n of the
// plus problem. The returned evaluator vanishes within 1e-8 of the endpoints
// (Dirichlet limit of the catalog seeds).
Fn apply_A(const Fn& w, const Fn& f, const Fn& df);
Fn apply_A(const Fn& w, const StationaryMode& mode);

// Second-order intertwiner built from two consecutive seed levels j, j+1.
// Construction verifies that the Wronskian keeps one sign on (0,1) and that
// the seeds satisfy a common eigenproblem (via the Wronskian derivative
// identity W' = (e_j - e_j1) Q_j Q_j1).
class IntertwinerSecond {
 public:
  static IntertwinerSecond from_seeds(int j, SeedMode lo, SeedMode hi);
  // unnormalized sin((j+1) pi q), sin((j+2) pi q) seeds of the square well
  static IntertwinerSecond from_square_well(int j);

  int j() const { return j_; }
  const SeedMode& lo() const { return lo_; }
  const SeedMode& hi() const { return hi_; }

  double wronskian(double q) const;
  double wronskian_d1(double q) const;  // exact, from seed second derivatives
  double wronskian_d2(double q) const;  // via the eigenfunction identity

 private:
  IntertwinerSecond() = default;
  int j_ = 0;
  SeedMode lo_, hi_;
};

// V2 = V0 - 2 (log W)''. The default path uses closed-form seed derivatives;
// with numeric_log_derivative the second derivative of log|W| is taken by
// Richardson-extrapolated 5-point differences (stencil h), as an independent
// route. Throws if W vanishes within the evaluation stencil.
// The default stencil balances the 1/h^2 roundoff of the difference quotient
// against the h^6 truncation near the walls; smaller is not better here.
Fn partner_potential_2(const IntertwinerSecond& itw, const Fn& V0,
                       bool numeric_log_derivative = false, double h = 1.2e-3);

// Transformed (unnormalized) eigenfunction: the 3x3 determinant of seed and
// target values/derivatives divided by W. Rejects targets at a seed energy
// (those images are the non-normalizable ones).
Fn apply_D(const IntertwinerSecond& itw, const StationaryMode& mode);

// beta and gamma of the second-order operator d^2 + beta d + gamma at one
// point; throws where the seed product (and hence beta) vanishes.
std::pair<double, double> beta_gamma(const IntertwinerSecond& itw, double q);

// The would-be images of the seeds themselves, Q_j / W and Q_j1 / W.
// Diagnostic only: they diverge at the walls and cannot be normalized.
std::pair<Fn, Fn> non_normalizable_images(const IntertwinerSecond& itw);

}  // namespace mwell::darboux
