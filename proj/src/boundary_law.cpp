#include "mwell/boundary_law.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mwell/numerics.hpp"

namespace mwell {

namespace {
// positivity is certified by dense sampling, not root isolation
constexpr int kPositivitySamples = 2001;
}

void BoundaryLaw::validate_positivity() const {
  for (int i = 0; i < kPositivitySamples; ++i) {
    const double t = t_max_ * i / (kPositivitySamples - 1);
    double L = 0.0;
    switch (kind_) {
      case Kind::Case1: {
        const double r = (lambda_ * t + mu_) * t + nu_;
        if (r <= 0.0)
          throw std::invalid_argument("boundary law: radicand not positive on [0, t_max]");
        L = std::sqrt(r);
        break;
      }
      case Kind::Linear:
        L = L0_ + v_ * t;
        break;
      case Kind::Custom:
        L = fL_(t);
        break;
    }
    if (!(L > 0.0))
      throw std::invalid_argument("boundary law: L(t) not positive on [0, t_max]");
  }
}

BoundaryLaw BoundaryLaw::case1(double lambda, double mu, double nu, double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("boundary law: t_max must be positive");
  BoundaryLaw law;
  law.kind_ = Kind::Case1;
  law.lambda_ = lambda;
  law.mu_ = mu;
  law.nu_ = nu;
  law.c1_ = lambda * nu - 0.25 * mu * mu;
  law.t_max_ = t_max;
  law.validate_positivity();
  return law;
}

BoundaryLaw BoundaryLaw::linear(double L0, double v, double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("boundary law: t_max must be positive");
  BoundaryLaw law;
  law.kind_ = Kind::Linear;
  law.L0_ = L0;
  law.v_ = v;
  law.t_max_ = t_max;
  law.validate_positivity();
  return law;
}

BoundaryLaw BoundaryLaw::custom(std::function<double(double)> L,
                                std::function<double(double)> Ldot,
                                std::function<double(double)> Lddot, double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("boundary law: t_max must be positive");
  if (!L || !Ldot || !Lddot)
    throw std::invalid_argument("boundary law: custom law needs L, Ldot and Lddot");
  BoundaryLaw law;
  law.kind_ = Kind::Custom;
  law.fL_ = std::move(L);
  law.fLdot_ = std::move(Ldot);
  law.fLddot_ = std::move(Lddot);
  law.t_max_ = t_max;
  law.validate_positivity();
  return law;
}

void BoundaryLaw::check_time(double t) const {
  if (t < -1e-12 || t > t_max_ * (1.0 + 1e-12) + 1e-12)
    throw std::out_of_range("boundary law: t outside [0, t_max]");
}

BoundaryState BoundaryLaw::eval(double t) const {
  check_time(t);
  switch (kind_) {
    case Kind::Case1: {
      const double r = (lambda_ * t + mu_) * t + nu_;
      const double L = std::sqrt(r);
      return {L, (2.0 * lambda_ * t + mu_) / (2.0 * L), c1_ / (L * L * L)};
    }
    case Kind::Linear:
      return {L0_ + v_ * t, v_, 0.0};
    case Kind::Custom:
      return {fL_(t), fLdot_(t), fLddot_(t)};
  }
  throw std::logic_error("boundary law: bad kind");
}

double BoundaryLaw::tau(double t) const {
  check_time(t);
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case Kind::Case1: {
      if (lambda_ == 0.0 && mu_ == 0.0) return t / nu_;
      if (lambda_ == 0.0) return std::log((mu_ * t + nu_) / nu_) / mu_;
      const double disc = 4.0 * lambda_ * nu_ - mu_ * mu_;
      if (disc > 0.0) {
        const double s = std::sqrt(disc);
        return 2.0 / s *
               (std::atan((2.0 * lambda_ * t + mu_) / s) - std::atan(mu_ / s));
      }
      break;  // nonpositive discriminant: no registered closed form
    }
    case Kind::Linear: {
      if (v_ == 0.0) return t / (L0_ * L0_);
      return t / (L0_ * (L0_ + v_ * t));
    }
    case Kind::Custom:
      break;
  }
  const auto integrand = [this](double s) {
    const double L = eval(s).L;
    return 1.0 / (L * L);
  };
  return num::integrate(integrand, 0.0, t, 1e-12);
}

double BoundaryLaw::c1() const {
  if (kind_ != Kind::Case1)
    throw std::logic_error("boundary law: c1 defined for case1 laws only");
  return c1_;
}

std::string BoundaryLaw::describe() const {
  char buf[128];
  switch (kind_) {
    case Kind::Case1:
      std::snprintf(buf, sizeof buf, "case1:%g,%g,%g", lambda_, mu_, nu_);
      return buf;
    case Kind::Linear:
      std::snprintf(buf, sizeof buf, "linear:%g,%g", L0_, v_);
      return buf;
    case Kind::Custom:
      return "custom";
  }
  return "?";
}

}  // namespace mwell
