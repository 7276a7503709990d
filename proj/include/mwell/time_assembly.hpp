#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mwell/boundary_law.hpp"
#include "mwell/fixed_domain.hpp"

namespace mwell {

// Deliberate single-convention mutations, exposed so the verifier can show
// that each one is decisively rejected by the residual checks.
//   NoPi2        : drops the pi^2 factor from the mode energies
//   LdotForLddot : uses Ldot instead of Lddot in the x^2 potential term
//   NoLogL       : drops the -log(L)/2 term of the gauge phase
enum class Mutation { None, NoPi2, LdotForLddot, NoLogL };

Mutation mutation_from_name(const std::string& name);
std::string mutation_name(Mutation m);

// Gauge phase exponent phi(x,t) = (i/4)(Ldot/L) x^2 - (1/2) log L,
// so |e^phi|^2 = 1/L independently of x.
std::complex<double> phase(const BoundaryLaw& law, double t, double x,
                           Mutation mut = Mutation::None);

// Moving-domain potential V(x,t) = V_fixed(x/L)/L^2 - (Lddot/(4L)) x^2.
// When the model carries a case1 coefficient matching the law, the two x^2
// terms cancel and the potential is the purely rescaled fixed one.
double assemble_potential(const PotentialModel& model, const BoundaryLaw& law,
                          double t, double x, Mutation mut = Mutation::None);

// A normalized superposition psi(x,t) = e^phi sum_n c_n Q_n(x/L) e^{-i e_n tau}
// on 0 <= x <= L(t). Immutable; evaluators are pure.
class MovingSolution {
 public:
  struct Term {
    int n;
    std::complex<double> c;
    StationaryMode mode;
  };

  std::complex<double> eval(double x, double t) const;

  // evaluation with law state and clock fixed once per time slice
  std::function<std::complex<double>(double)> slice(double t) const;

  const std::vector<Term>& terms() const { return terms_; }
  const BoundaryLaw& law() const { return law_; }
  const PotentialModel& model() const { return model_; }
  Mutation mutation() const { return mut_; }
  MovingSolution with_mutation(Mutation m) const;

 private:
  friend MovingSolution superpose(const PotentialModel&, const BoundaryLaw&,
                                  const std::vector<std::pair<int, std::complex<double>>>&);
  MovingSolution(PotentialModel model, BoundaryLaw law, std::vector<Term> terms)
      : model_(std::move(model)), law_(std::move(law)), terms_(std::move(terms)) {}

  PotentialModel model_;
  BoundaryLaw law_;
  std::vector<Term> terms_;
  Mutation mut_ = Mutation::None;
};

MovingSolution assemble_mode(const PotentialModel& model, const BoundaryLaw& law, int n);

// Coefficients are normalized to unit total weight on construction;
// duplicate indices and all-zero weights are rejected.
MovingSolution superpose(const PotentialModel& model, const BoundaryLaw& law,
                         const std::vector<std::pair<int, std::complex<double>>>& coeffs);

}  // namespace mwell
