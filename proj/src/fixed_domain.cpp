#include "mwell/fixed_domain.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "mwell/numerics.hpp"

namespace mwell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// The partner shapes are differences of terms growing like 1/q^2 that cancel
// to q^power at the walls, so the closed forms drown in roundoff there.
// Below kSeriesCut they are evaluated as tail * q^power instead, with the
// tail coefficient sampled at kSeriesSample where the closed form is clean.
constexpr double kSeriesCut = 1e-3;
constexpr double kSeriesSample = 1e-2;

// wall behavior q^power from the leading 1/q^2 coefficient of the potential
int wall_power(Family family) {
  return family == Family::FirstOrderPartner ? 2 : 3;
}

double raw_shape(Family family, int j, int n, double q) {
  const double x = kPi * q;
  switch (family) {
    case Family::SquareWell:
      return std::sin((n + 1) * x);
    case Family::FirstOrderPartner: {
      // (d/dq + w) applied to the base level n+1, w = -pi cot(pi q)
      const int m = n + 2;
      const double s = std::sin(x), c = std::cos(x);
      return kPi * (m * std::cos(m * x) - (c / s) * std::sin(m * x));
    }
    case Family::SecondOrderPartner: {
      const double s = std::sin(x), c = std::cos(x);
      if (j == 0) {
        const int K = n + 1;
        const double cosec2 = 1.0 / (s * s);
        return kPi2 * (std::sin(K * x) * (3.0 * cosec2 - (n * n + 2 * n + 3)) -
                       3.0 * K * (c / s) * std::cos(K * x));
      }
      // j == 1; the sign of the last term follows the Wronskian determinant
      // construction (cross-checked against it in the darboux tests)
      const double a = n * n - 3 * n + 2;
      const double b = n * n + 7 * n + 12;
      const double d = 2.0 * (n * n + 2 * n - 8);
      const double pref = kPi2 / (s * s * 2.0 * (3.0 + 2.0 * std::cos(2 * x)));
      return pref * (c * (a * std::sin((n + 4) * x) + b * std::sin((n - 2) * x)) -
                     d * std::sin((n + 1) * x));
    }
  }
  throw std::logic_error("raw_shape: bad family");
}

}  // namespace

struct ModeConstants {
  double scale;       // signed 1/norm
  double tail_left;   // leading series coefficients at the walls
  double tail_right;
};

struct NormCache {
  std::mutex mu;
  std::map<int, ModeConstants> c;
};

PotentialModel::PotentialModel(Family f, int j)
    : family_(f), j_(j), cache_(std::make_shared<NormCache>()) {
  if (f == Family::SecondOrderPartner) deleted_ = {j, j + 1};
}

PotentialModel PotentialModel::square_well() {
  return PotentialModel(Family::SquareWell, -1);
}

PotentialModel PotentialModel::first_order_partner() {
  return PotentialModel(Family::FirstOrderPartner, -1);
}

PotentialModel PotentialModel::second_order_partner(int j) {
  if (j != 0 && j != 1)
    throw std::invalid_argument("second_order_partner: j must be 0 or 1");
  return PotentialModel(Family::SecondOrderPartner, j);
}

PotentialModel PotentialModel::from_name(const std::string& name) {
  if (name == "well") return square_well();
  if (name == "susy1") return first_order_partner();
  if (name == "susy2-j0") return second_order_partner(0);
  if (name == "susy2-j1") return second_order_partner(1);
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected well, susy1, susy2-j0 or susy2-j1)");
}

PotentialModel PotentialModel::with_case1(double c1) const {
  PotentialModel m = *this;
  m.case1_c1_ = c1;
  m.cache_ = std::make_shared<NormCache>();
  return m;
}

std::vector<int> PotentialModel::admissible_indices(int count) const {
  std::vector<int> out;
  for (int n = 0; static_cast<int>(out.size()) < count; ++n)
    if (admissible(n)) out.push_back(n);
  return out;
}

double PotentialModel::potential(double q) const {
  if (singular()) {
    if (!(q > 0.0 && q < 1.0))
      throw std::domain_error("potential: singular family needs q in (0,1)");
  } else if (q < -1e-12 || q > 1.0 + 1e-12) {
    throw std::domain_error("potential: q outside [0,1]");
  }
  double v = 0.0;
  const double x = kPi * q;
  switch (family_) {
    case Family::SquareWell:
      v = -kPi2;
      break;
    case Family::FirstOrderPartner: {
      const double s = std::sin(x);
      v = kPi2 * (2.0 / (s * s) - 1.0);
      break;
    }
    case Family::SecondOrderPartner: {
      const double s = std::sin(x);
      if (j_ == 0) {
        v = kPi2 * (6.0 / (s * s) - 1.0);
      } else {
        const double c2 = std::cos(2 * x), c4 = std::cos(4 * x), c6 = std::cos(6 * x);
        const double den = 3.0 + 2.0 * c2;
        v = kPi2 * (135.0 + 160.0 * c2 + 4.0 * c4 + c6) / (s * s * 2.0 * den * den);
      }
      break;
    }
  }
  if (case1_c1_) v += 0.25 * *case1_c1_ * q * q;
  return v;
}

double PotentialModel::energy(int n) const {
  if (!admissible(n))
    throw std::invalid_argument("energy: level " + std::to_string(n) +
                                " is not in the spectrum");
  switch (family_) {
    case Family::SquareWell:
      return n * (n + 2) * kPi2;
    case Family::FirstOrderPartner:
      return (n + 1) * (n + 3) * kPi2;  // re-indexed base levels n >= 1
    case Family::SecondOrderPartner:
      return n * (n + 2) * kPi2;  // base indexing with levels j, j+1 removed
  }
  throw std::logic_error("energy: bad family");
}

StationaryMode PotentialModel::mode(int n) const {
  if (case1_c1_)
    throw std::invalid_argument(
        "mode: the case1 composite has no closed-form modes; use fd_spectrum");
  if (!admissible(n))
    throw std::invalid_argument("mode: level " + std::to_string(n) +
                                " is not in the spectrum");

  const Family fam = family_;
  const int j = j_;
  const int power = wall_power(fam);
  const auto raw = [fam, j, n](double q) { return raw_shape(fam, j, n, q); };

  ModeConstants mc;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->c.find(n);
    if (it != cache_->c.end()) {
      mc = it->second;
    } else {
      mc.tail_left = raw(kSeriesSample) / std::pow(kSeriesSample, power);
      mc.tail_right = raw(1.0 - kSeriesSample) / std::pow(kSeriesSample, power);
      const auto unnormalized = [&](double q) {
        if (q <= 0.0 || q >= 1.0) return 0.0;
        if (fam == Family::SquareWell) return raw(q);
        if (q < kSeriesCut) return mc.tail_left * std::pow(q, power);
        if (q > 1.0 - kSeriesCut) return mc.tail_right * std::pow(1.0 - q, power);
        return raw(q);
      };
      const double norm2 = num::integrate(
          [&unnormalized](double q) {
            const double u = unnormalized(q);
            return u * u;
          },
          0.0, 1.0, 1e-12);
      mc.scale = 1.0 / std::sqrt(norm2);
      if (unnormalized(1e-3) < 0.0) mc.scale = -mc.scale;  // positive as q -> 0+
      cache_->c[n] = mc;
    }
  }

  StationaryMode m;
  m.n = n;
  m.energy = energy(n);
  const double scale = mc.scale;
  if (family_ == Family::SquareWell) {
    const double k = (n + 1) * kPi;
    m.eval = [k, scale](double q) {
      if (q <= 0.0 || q >= 1.0) return 0.0;
      return scale * std::sin(k * q);
    };
    m.deval = [k, scale](double q) { return scale * k * std::cos(k * q); };
    m.ddeval = [k, scale](double q) { return -scale * k * k * std::sin(k * q); };
  } else {
    const double cl = mc.tail_left, cr = mc.tail_right;
    m.eval = [raw, power, scale, cl, cr](double q) {
      if (q <= 0.0 || q >= 1.0) return 0.0;
      if (q < kSeriesCut) return scale * cl * std::pow(q, power);
      if (q > 1.0 - kSeriesCut) return scale * cr * std::pow(1.0 - q, power);
      return scale * raw(q);
    };
  }
  return m;
}

std::string PotentialModel::name() const {
  switch (family_) {
    case Family::SquareWell:
      return "well";
    case Family::FirstOrderPartner:
      return "susy1";
    case Family::SecondOrderPartner:
      return j_ == 0 ? "susy2-j0" : "susy2-j1";
  }
  return "?";
}

double mode_shape_raw(const PotentialModel& model, int n, double q) {
  return raw_shape(model.family(), model.seed_index(), n, q);
}

}  // namespace mwell
