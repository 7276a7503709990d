#include "mwell/time_assembly.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace mwell {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

Mutation mutation_from_name(const std::string& name) {
  if (name.empty() || name == "none") return Mutation::None;
  if (name == "no-pi2") return Mutation::NoPi2;
  if (name == "ldot-for-lddot") return Mutation::LdotForLddot;
  if (name == "no-logL") return Mutation::NoLogL;
  throw std::invalid_argument("unknown mutation '" + name +
                              "' (expected no-pi2, ldot-for-lddot or no-logL)");
}

std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::NoPi2: return "no-pi2";
    case Mutation::LdotForLddot: return "ldot-for-lddot";
    case Mutation::NoLogL: return "no-logL";
  }
  return "?";
}

std::complex<double> phase(const BoundaryLaw& law, double t, double x, Mutation mut) {
  const BoundaryState s = law.eval(t);
  if (x < -1e-12 || x > s.L * (1.0 + 1e-12))
    throw std::domain_error("phase: x outside [0, L(t)]");
  const double re = mut == Mutation::NoLogL ? 0.0 : -0.5 * std::log(s.L);
  return {re, 0.25 * (s.Ldot / s.L) * x * x};
}

double assemble_potential(const PotentialModel& model, const BoundaryLaw& law,
                          double t, double x, Mutation mut) {
  const BoundaryState s = law.eval(t);
  if (x < -1e-12 || x > s.L * (1.0 + 1e-12))
    throw std::domain_error("assemble_potential: x outside [0, L(t)]");
  const double q = x / s.L;
  const double acc = mut == Mutation::LdotForLddot ? s.Ldot : s.Lddot;
  return model.potential(q) / (s.L * s.L) - acc / (4.0 * s.L) * x * x;
}

std::complex<double> MovingSolution::eval(double x, double t) const {
  return slice(t)(x);
}

std::function<std::complex<double>(double)> MovingSolution::slice(double t) const {
  const BoundaryState s = law_.eval(t);
  const double tau = law_.tau(t);
  const double logL = mut_ == Mutation::NoLogL ? 0.0 : -0.5 * std::log(s.L);
  const double curv = 0.25 * s.Ldot / s.L;
  struct Wave {
    std::complex<double> amp;
    std::function<double(double)> shape;
  };
  std::vector<Wave> waves;
  waves.reserve(terms_.size());
  for (const Term& term : terms_) {
    const double e = mut_ == Mutation::NoPi2 ? term.mode.energy / kPi2 : term.mode.energy;
    waves.push_back({term.c * std::polar(1.0, -e * tau), term.mode.eval});
  }
  const double L = s.L;
  return [waves = std::move(waves), L, logL, curv](double x) {
    if (x < -1e-12 * std::max(1.0, L) || x > L * (1.0 + 1e-12))
      throw std::domain_error("solution: x outside [0, L(t)]");
    const double q = std::min(1.0, std::max(0.0, x / L));
    std::complex<double> sum = 0.0;
    for (const Wave& w : waves) sum += w.amp * w.shape(q);
    return sum * std::exp(std::complex<double>(logL, curv * x * x));
  };
}

MovingSolution MovingSolution::with_mutation(Mutation m) const {
  MovingSolution copy = *this;
  copy.mut_ = m;
  return copy;
}

MovingSolution assemble_mode(const PotentialModel& model, const BoundaryLaw& law, int n) {
  return superpose(model, law, {{n, 1.0}});
}

MovingSolution superpose(const PotentialModel& model, const BoundaryLaw& law,
                         const std::vector<std::pair<int, std::complex<double>>>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("superpose: no terms");
  std::set<int> seen;
  double weight = 0.0;
  for (const auto& [n, c] : coeffs) {
    if (!seen.insert(n).second)
      throw std::invalid_argument("superpose: duplicate mode index");
    weight += std::norm(c);
  }
  if (weight <= 0.0) throw std::invalid_argument("superpose: all coefficients vanish");
  const double scale = 1.0 / std::sqrt(weight);
  std::vector<MovingSolution::Term> terms;
  terms.reserve(coeffs.size());
  for (const auto& [n, c] : coeffs) terms.push_back({n, c * scale, model.mode(n)});
  return MovingSolution(model, law, std::move(terms));
}

}  // namespace mwell
