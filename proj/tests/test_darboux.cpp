#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mwell/darboux.hpp"
#include "mwell/numerics.hpp"

using namespace mwell;
using namespace mwell::darboux;
namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

const PotentialModel& base() {
  static const PotentialModel well = PotentialModel::square_well();
  return well;
}

double max_on_window(const Fn& f, double lo = 0.05, double hi = 0.95, int n = 500) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(f(lo + (hi - lo) * i / (n - 1))));
  return worst;
}

Fn normalized(const Fn& f) {
  const double norm =
      std::sqrt(num::integrate([&f](double q) { return f(q) * f(q); }, 0.0, 1.0, 1e-12));
  const double sign = f(1e-3) < 0.0 ? -1.0 : 1.0;
  return [f, norm, sign](double q) { return sign * f(q) / norm; };
}
}  // namespace

TEST_CASE("superpotential of the nodeless ground state") {
  const auto w = superpotential_from_ground(base().mode(0));
  CHECK(std::abs(w(0.5)) < 1e-12);
  CHECK(w(0.25) == doctest::Approx(-kPi).epsilon(1e-12));
  // difference oracle: w must equal -Q0'/Q0 from values alone
  const auto q0 = base().mode(0).eval;
  for (double q : {0.2, 0.4, 0.7}) {
    const double fd = -num::derivative1(q0, q) / q0(q);
    CHECK(w(q) == doctest::Approx(fd).epsilon(1e-8));
  }
  CHECK_THROWS_AS(superpotential_from_ground(base().mode(1)), std::invalid_argument);
}

TEST_CASE("first-order partner potentials from the superpotential") {
  const auto itw = IntertwinerFirst::from_ground(base().mode(0));
  for (double q : {0.1, 0.33, 0.5, 0.72, 0.9}) {
    CHECK(itw.potential_minus(q) == doctest::Approx(-kPi2).epsilon(1e-11));
    CHECK(itw.potential_plus(q) - itw.potential_minus(q) ==
          doctest::Approx(2.0 * itw.dw(q)).epsilon(1e-12));
    // numerical w' as an independent route
    const auto w = [&itw](double x) { return itw.w(x); };
    CHECK(itw.dw(q) == doctest::Approx(num::derivative1(w, q)).epsilon(1e-8));
  }
  // reconstruction equals the catalog potential on the sampling window
  const auto cat = PotentialModel::first_order_partner();
  const double dev = max_on_window(
      [&](double q) { return itw.potential_plus(q) - cat.potential(q); });
  CHECK(dev < 1e-8);
}

TEST_CASE("apply_A raises levels") {
  const auto w = superpotential_from_ground(base().mode(0));
  // raw evaluation with an explicit sine input
  const auto out = apply_A(
      w, [](double q) { return std::sin(2.0 * kPi * q); },
      [](double q) { return 2.0 * kPi * std::cos(2.0 * kPi * q); });
  CHECK(out(0.5) == doctest::Approx(-2.0 * kPi).epsilon(1e-12));

  // the ground state is annihilated
  const auto killed = apply_A(w, base().mode(0));
  CHECK(max_on_window(killed) < 1e-9);

  // normalized images reproduce the first-order catalog modes
  const auto cat = PotentialModel::first_order_partner();
  for (int n = 0; n < 4; ++n) {
    const auto img = normalized(apply_A(w, base().mode(n + 1)));
    const auto ref = cat.mode(n).eval;
    const double dev =
        max_on_window([&](double q) { return img(q) - ref(q); }, 0.01, 0.99);
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("wronskian of consecutive sine seeds") {
  const auto itw = IntertwinerSecond::from_square_well(0);
  CHECK(itw.wronskian(0.5) == doctest::Approx(-2.0 * kPi).epsilon(1e-13));
  for (double q : {0.1, 0.25, 0.4, 0.6, 0.95}) {
    const double s = std::sin(kPi * q);
    CHECK(itw.wronskian(q) == doctest::Approx(-2.0 * kPi * s * s * s).epsilon(1e-11));
    CHECK(std::abs(itw.wronskian(q)) ==
          doctest::Approx(std::abs(itw.wronskian(1.0 - q))).epsilon(1e-10));
    // derivative identity cross-checked by differences
    const auto W = [&itw](double x) { return itw.wronskian(x); };
    CHECK(itw.wronskian_d1(q) == doctest::Approx(num::derivative1(W, q)).epsilon(1e-8));
  }
}

TEST_CASE("inconsistent seeds are rejected") {
  const auto sine = [](int level) {
    const double k = (level + 1) * kPi;
    SeedMode s;
    s.f = [k](double q) { return std::sin(k * q); };
    s.df = [k](double q) { return k * std::cos(k * q); };
    s.ddf = [k](double q) { return -k * k * std::sin(k * q); };
    s.energy = level * (level + 2) * kPi2;
    return s;
  };
  auto lo = sine(0);
  auto hi = sine(1);
  hi.energy = 5.0;  // wrong level energy breaks the Wronskian identity
  CHECK_THROWS_AS(IntertwinerSecond::from_seeds(0, lo, hi), std::invalid_argument);
  // seeds sharing a level have an identically vanishing Wronskian
  CHECK_THROWS_AS(IntertwinerSecond::from_seeds(0, sine(1), sine(1)),
                  std::invalid_argument);
}

TEST_CASE("second-order partner potential, both routes") {
  const auto v0 = [](double q) { return base().potential(q); };
  for (int j : {0, 1}) {
    const auto itw = IntertwinerSecond::from_square_well(j);
    const auto cat = PotentialModel::second_order_partner(j);
    const auto closed = partner_potential_2(itw, v0);
    const auto numeric = partner_potential_2(itw, v0, true);
    CHECK(max_on_window([&](double q) { return closed(q) - cat.potential(q); }) < 1e-8);
    CHECK(max_on_window([&](double q) { return numeric(q) - cat.potential(q); }) < 1e-6);
  }
  const auto itw1 = IntertwinerSecond::from_square_well(1);
  CHECK(partner_potential_2(itw1, v0)(0.5) ==
        doctest::Approx(-11.0 * kPi2).epsilon(1e-12));
}

TEST_CASE("partner potential shifts with the base potential") {
  const double shift = 4.2;
  const auto sine = [](int level, double offset) {
    const double k = (level + 1) * kPi;
    SeedMode s;
    s.f = [k](double q) { return std::sin(k * q); };
    s.df = [k](double q) { return k * std::cos(k * q); };
    s.ddf = [k](double q) { return -k * k * std::sin(k * q); };
    s.energy = level * (level + 2) * kPi2 + offset;
    return s;
  };
  const auto plain = IntertwinerSecond::from_square_well(0);
  const auto shifted =
      IntertwinerSecond::from_seeds(0, sine(0, shift), sine(1, shift));
  const auto v0 = [](double q) { return base().potential(q); };
  const auto v0s = [shift](double q) { return base().potential(q) + shift; };
  const auto a = partner_potential_2(plain, v0);
  const auto b = partner_potential_2(shifted, v0s);
  CHECK(max_on_window([&](double q) { return b(q) - a(q) - shift; }) < 1e-9);
}

TEST_CASE("apply_D reproduces the catalog shapes") {
  for (int j : {0, 1}) {
    const auto itw = IntertwinerSecond::from_square_well(j);
    const auto cat = PotentialModel::second_order_partner(j);
    for (int n : cat.admissible_indices(3)) {
      const auto img = normalized(apply_D(itw, base().mode(n)));
      const auto ref = cat.mode(n).eval;
      const double dev =
          max_on_window([&](double q) { return img(q) - ref(q); }, 0.01, 0.99);
      CHECK(dev < 1e-10);
    }
  }
  // anchor: the j=0 image of base level 2 at the midpoint, up to seed scaling
  const auto itw0 = IntertwinerSecond::from_square_well(0);
  const auto raw = apply_D(itw0, base().mode(2));
  CHECK(raw(0.5) == doctest::Approx(std::sqrt(2.0) * 8.0 * kPi2).epsilon(1e-11));
}

TEST_CASE("apply_D rejects seed levels") {
  const auto itw = IntertwinerSecond::from_square_well(0);
  CHECK_THROWS_AS(apply_D(itw, base().mode(0)), std::invalid_argument);
  CHECK_THROWS_AS(apply_D(itw, base().mode(1)), std::invalid_argument);
  CHECK_NOTHROW(apply_D(itw, base().mode(2)));
}

TEST_CASE("apply_D images are eigenfunctions of the partner potential") {
  const auto itw = IntertwinerSecond::from_square_well(1);
  const auto cat = PotentialModel::second_order_partner(1);
  const auto u = normalized(apply_D(itw, base().mode(3)));
  const double e = base().energy(3);
  const auto residual = [&](int n) {
    const double h = 1.0 / n;
    double sum2 = 0.0;
    for (int i = 1; i < n; ++i) {
      const double q = i * h;
      const double upp = (u(q + h) - 2.0 * u(q) + u(q - h)) / (h * h);
      const double r = -upp + cat.potential(q) * u(q) - e * u(q);
      sum2 += r * r;
    }
    return std::sqrt(sum2 / (n - 1));
  };
  const double order = std::log2(residual(400) / residual(800));
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("level deletion: image energies skip the seed levels") {
  // Rayleigh quotients of the first admissible images recover e_k, never the
  // deleted e_j, e_j+1
  const auto itw = IntertwinerSecond::from_square_well(0);
  const auto cat = PotentialModel::second_order_partner(0);
  for (int k : cat.admissible_indices(6)) {
    const auto u = normalized(apply_D(itw, base().mode(k)));
    const int n = 3000;
    const double h = 1.0 / n;
    double num_sum = 0.0, den_sum = 0.0;
    for (int i = 1; i < n; ++i) {
      const double q = i * h;
      const double upp = (u(q + h) - 2.0 * u(q) + u(q - h)) / (h * h);
      num_sum += u(q) * (-upp + cat.potential(q) * u(q));
      den_sum += u(q) * u(q);
    }
    const double rayleigh = num_sum / den_sum;
    CHECK(rayleigh == doctest::Approx(base().energy(k)).epsilon(1e-4));
    CHECK(std::abs(rayleigh - base().energy(0)) > 1.0);
    CHECK(std::abs(rayleigh - base().energy(1)) > 1.0);
  }
}

TEST_CASE("beta and gamma") {
  const auto itw = IntertwinerSecond::from_square_well(0);
  CHECK(beta_gamma(itw, 0.25).first == doctest::Approx(-3.0 * kPi).epsilon(1e-12));
  // seed product vanishes at the midpoint for j=0
  CHECK_THROWS_AS(beta_gamma(itw, 0.5), std::domain_error);

  // the pointwise operator d^2 + beta d + gamma reproduces the determinant
  for (int k : {2, 3, 4}) {
    const auto det_route = apply_D(itw, base().mode(k));
    const auto m = base().mode(k);
    for (double q : {0.15, 0.3, 0.65, 0.8}) {
      const auto [b, g] = beta_gamma(itw, q);
      const double op = m.ddeval(q) + b * m.deval(q) + g * m.eval(q);
      CHECK(op == doctest::Approx(det_route(q)).epsilon(1e-9));
    }
  }

  // beta and gamma stay finite away from the seed-product nodes
  for (int j : {0, 1}) {
    const auto it2 = IntertwinerSecond::from_square_well(j);
    for (int i = 1; i < 200; ++i) {
      const double q = i / 200.0;
      const double p = it2.lo().f(q) * it2.hi().f(q);
      if (std::abs(p) < 1e-3) continue;
      const auto [bb, gg] = beta_gamma(it2, q);
      CHECK(std::isfinite(bb));
      CHECK(std::isfinite(gg));
    }
  }

  // beta is invariant under seed rescaling
  const auto scaled = IntertwinerSecond::from_seeds(
      0,
      SeedMode{[](double q) { return 3.0 * std::sin(kPi * q); },
               [](double q) { return 3.0 * kPi * std::cos(kPi * q); },
               [](double q) { return -3.0 * kPi2 * std::sin(kPi * q); }, 0.0},
      SeedMode{[](double q) { return -0.5 * std::sin(2.0 * kPi * q); },
               [](double q) { return -kPi * std::cos(2.0 * kPi * q); },
               [](double q) { return 2.0 * kPi2 * std::sin(2.0 * kPi * q); },
               3.0 * kPi2});
  for (double q : {0.2, 0.4, 0.8})
    CHECK(beta_gamma(scaled, q).first ==
          doctest::Approx(beta_gamma(itw, q).first).epsilon(1e-11));
}

TEST_CASE("seed images through 1/W cannot be normalized") {
  const auto itw = IntertwinerSecond::from_square_well(0);
  const auto [f, g] = non_normalizable_images(itw);
  const auto tail_mass = [](const Fn& u, double delta) {
    return num::integrate([&u](double q) { return u(q) * u(q); }, delta, 1.0 - delta,
                          1e-9);
  };
  // the partial integrals blow up as the window approaches the walls
  CHECK(tail_mass(f, 1e-3) > 5.0 * tail_mass(f, 1e-2));
  CHECK(tail_mass(f, 1e-4) > 5.0 * tail_mass(f, 1e-3));
  CHECK(tail_mass(g, 1e-3) > 5.0 * tail_mass(g, 1e-2));
  CHECK(tail_mass(g, 1e-4) > 5.0 * tail_mass(g, 1e-3));
}
