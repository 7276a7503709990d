#include "mwell/darboux.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mwell/numerics.hpp"

namespace mwell::darboux {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1e-8;
}

SeedMode seed_from_mode(const StationaryMode& mode) {
  if (!mode.eval || !mode.deval || !mode.ddeval)
    throw std::invalid_argument("seed_from_mode: mode needs closed-form derivatives");
  return {mode.eval, mode.deval, mode.ddeval, mode.energy};
}

Fn superpotential_from_ground(const StationaryMode& ground) {
  if (!ground.eval || !ground.deval)
    throw std::invalid_argument("superpotential: ground mode needs a derivative");
  const int samples = 999;
  const double first = ground.eval(1.0 / (samples + 1));
  for (int i = 1; i <= samples; ++i) {
    const double v = ground.eval(static_cast<double>(i) / (samples + 1));
    if (v == 0.0 || v * first < 0.0)
      throw std::invalid_argument("superpotential: seed has an interior node");
  }
  auto f = ground.eval;
  auto df = ground.deval;
  return [f, df](double q) { return -df(q) / f(q); };
}

IntertwinerFirst IntertwinerFirst::from_ground(const StationaryMode& ground) {
  IntertwinerFirst itw;
  itw.w_ = superpotential_from_ground(ground);
  auto f = ground.eval;
  auto df = ground.deval;
  auto ddf = ground.ddeval;
  itw.dw_ = [f, df, ddf](double q) {
    const double v = f(q), d = df(q);
    return -ddf(q) / v + (d / v) * (d / v);
  };
  return itw;
}

Fn apply_A(const Fn& w, const Fn& f, const Fn& df) {
  return [w, f, df](double q) {
    if (q < kEdge || q > 1.0 - kEdge) return 0.0;
    return df(q) + w(q) * f(q);
  };
}

Fn apply_A(const Fn& w, const StationaryMode& mode) {
  if (!mode.eval || !mode.deval)
    throw std::invalid_argument("apply_A: mode needs a closed-form derivative");
  return apply_A(w, mode.eval, mode.deval);
}

IntertwinerSecond IntertwinerSecond::from_seeds(int j, SeedMode lo, SeedMode hi) {
  if (!lo.f || !lo.df || !lo.ddf || !hi.f || !hi.df || !hi.ddf)
    throw std::invalid_argument("intertwiner: seeds need f, df and ddf");
  IntertwinerSecond itw;
  itw.j_ = j;
  itw.lo_ = std::move(lo);
  itw.hi_ = std::move(hi);

  const int samples = 1001;
  double first = 0.0;
  const double de = itw.lo_.energy - itw.hi_.energy;
  for (int i = 1; i <= samples; ++i) {
    const double q = static_cast<double>(i) / (samples + 1);
    const double W = itw.wronskian(q);
    if (i == 1) first = W;
    if (W == 0.0 || W * first < 0.0)
      throw std::invalid_argument("intertwiner: Wronskian vanishes on (0,1)");
    // seeds must solve a common eigenproblem: W' = (e_lo - e_hi) Q_lo Q_hi
    const double direct = itw.wronskian_d1(q);
    const double identity = de * itw.lo_.f(q) * itw.hi_.f(q);
    if (std::abs(direct - identity) >
        1e-8 * (std::abs(direct) + std::abs(identity) + 1.0))
      throw std::invalid_argument("intertwiner: seeds are not a consistent eigenpair");
  }
  return itw;
}

IntertwinerSecond IntertwinerSecond::from_square_well(int j) {
  if (j < 0) throw std::invalid_argument("intertwiner: j must be nonnegative");
  const auto seed = [](int level) {
    const double k = (level + 1) * kPi;
    SeedMode s;
    s.f = [k](double q) { return std::sin(k * q); };
    s.df = [k](double q) { return k * std::cos(k * q); };
    s.ddf = [k](double q) { return -k * k * std::sin(k * q); };
    s.energy = level * (level + 2) * kPi * kPi;
    return s;
  };
  return from_seeds(j, seed(j), seed(j + 1));
}

double IntertwinerSecond::wronskian(double q) const {
  return lo_.f(q) * hi_.df(q) - lo_.df(q) * hi_.f(q);
}

double IntertwinerSecond::wronskian_d1(double q) const {
  return lo_.f(q) * hi_.ddf(q) - lo_.ddf(q) * hi_.f(q);
}

double IntertwinerSecond::wronskian_d2(double q) const {
  const double de = lo_.energy - hi_.energy;
  return de * (lo_.df(q) * hi_.f(q) + lo_.f(q) * hi_.df(q));
}

Fn partner_potential_2(const IntertwinerSecond& itw, const Fn& V0,
                       bool numeric_log_derivative, double h) {
  if (!numeric_log_derivative) {
    return [itw, V0](double q) {
      const double W = itw.wronskian(q);
      if (W == 0.0) throw std::domain_error("partner potential: W vanishes");
      const double Wp = itw.wronskian_d1(q);
      const double Wpp = itw.wronskian_d2(q);
      const double r = Wp / W;
      return V0(q) - 2.0 * (Wpp / W - r * r);
    };
  }
  return [itw, V0, h](double q) {
    for (double s : {-h, -0.5 * h, 0.0, 0.5 * h, h, -2 * h, 2 * h})
      if (itw.wronskian(q + s) == 0.0)
        throw std::domain_error("partner potential: W vanishes within stencil");
    const auto logW = [&itw](double x) { return std::log(std::abs(itw.wronskian(x))); };
    return V0(q) - 2.0 * num::derivative2(logW, q, h);
  };
}

Fn apply_D(const IntertwinerSecond& itw, const StationaryMode& mode) {
  const SeedMode t = seed_from_mode(mode);
  const double scale = std::abs(itw.lo().energy) + std::abs(itw.hi().energy) + 1.0;
  if (std::abs(t.energy - itw.lo().energy) < 1e-9 * scale ||
      std::abs(t.energy - itw.hi().energy) < 1e-9 * scale)
    throw std::invalid_argument(
        "apply_D: target at a seed level maps to a non-normalizable image");
  return [itw, t](double q) {
    if (q < kEdge || q > 1.0 - kEdge) return 0.0;
    const double a = itw.lo().f(q), b = itw.hi().f(q), c = t.f(q);
    const double ap = itw.lo().df(q), bp = itw.hi().df(q), cp = t.df(q);
    const double app = itw.lo().ddf(q), bpp = itw.hi().ddf(q), cpp = t.ddf(q);
    const double det = a * (bp * cpp - bpp * cp) - b * (ap * cpp - app * cp) +
                       c * (ap * bpp - app * bp);
    return det / (a * bp - ap * b);
  };
}

std::pair<double, double> beta_gamma(const IntertwinerSecond& itw, double q) {
  const SeedMode& lo = itw.lo();
  const SeedMode& hi = itw.hi();
  const double de = hi.energy - lo.energy;
  const double P = lo.f(q) * hi.f(q);
  if (std::abs(P) < 1e-12)
    throw std::domain_error("beta_gamma: seed product vanishes at q");
  const double W = itw.wronskian(q);
  const double Wp = itw.wronskian_d1(q);
  const double Wpp = itw.wronskian_d2(q);
  const double Pp = lo.df(q) * hi.f(q) + lo.f(q) * hi.df(q);
  const double Ppp = lo.ddf(q) * hi.f(q) + 2.0 * lo.df(q) * hi.df(q) + lo.f(q) * hi.ddf(q);

  const double beta = de * P / W;
  const double beta1 = de * (Pp / W - P * Wp / (W * W));
  const double beta2 = de * (Ppp / W - 2.0 * Pp * Wp / (W * W) - P * Wpp / (W * W) +
                             2.0 * P * Wp * Wp / (W * W * W));
  const double gamma = -beta2 / (2.0 * beta) +
                       (beta1 / (2.0 * beta)) * (beta1 / (2.0 * beta)) + 0.5 * beta1 +
                       0.25 * beta * beta - (de / (2.0 * beta)) * (de / (2.0 * beta));
  return {beta, gamma};
}

std::pair<Fn, Fn> non_normalizable_images(const IntertwinerSecond& itw) {
  auto f = [itw](double q) { return itw.lo().f(q) / itw.wronskian(q); };
  auto g = [itw](double q) { return itw.hi().f(q) / itw.wronskian(q); };
  return {f, g};
}

}  // namespace mwell::darboux
