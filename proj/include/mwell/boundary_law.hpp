#pragma once

#include <functional>
#include <string>

namespace mwell {

// L, dL/dt, d2L/dt2 at one instant
struct BoundaryState {
  double L;
  double Ldot;
  double Lddot;
};

// Motion law of the right wall, valid on [0, horizon]. Immutable after
// construction; safe to share across threads.
//
// case1:  L(t) = sqrt(lambda t^2 + mu t + nu), the family with
//         L^3 Lddot = c1 = lambda nu - mu^2/4 constant.
// linear: L(t) = L0 + v t (Lddot = 0).
// custom: caller supplies all three callables; no internal differentiation.
class BoundaryLaw {
 public:
  enum class Kind { Case1, Linear, Custom };

  static BoundaryLaw case1(double lambda, double mu, double nu, double t_max);
  static BoundaryLaw linear(double L0, double v, double t_max);
  static BoundaryLaw custom(std::function<double(double)> L,
                            std::function<double(double)> Ldot,
                            std::function<double(double)> Lddot, double t_max);

  BoundaryState eval(double t) const;

  // rescaled clock tau(t) = int_0^t ds / L(s)^2; closed form for linear laws
  // and for case1 with 4*lambda*nu - mu^2 > 0, adaptive quadrature otherwise
  double tau(double t) const;

  Kind kind() const { return kind_; }
  double horizon() const { return t_max_; }
  double c1() const;  // case1 only

  std::string describe() const;

 private:
  BoundaryLaw() = default;
  void check_time(double t) const;
  void validate_positivity() const;

  Kind kind_ = Kind::Custom;
  double t_max_ = 0.0;
  double lambda_ = 0.0, mu_ = 0.0, nu_ = 0.0, c1_ = 0.0;  // case1
  double L0_ = 0.0, v_ = 0.0;                              // linear
  std::function<double(double)> fL_, fLdot_, fLddot_;      // custom
};

}  // namespace mwell
