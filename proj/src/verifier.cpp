#include "mwell/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwell/numerics.hpp"

namespace mwell {

void validate_grid(const GridSpec& grid, const BoundaryLaw& law) {
  if (grid.n_x < 16 || grid.n_t < 16)
    throw std::invalid_argument("grid: need n_x >= 16 and n_t >= 16");
  if (!(grid.t0 < grid.t1))
    throw std::invalid_argument("grid: need t0 < t1");
  if (grid.t1 > law.horizon() * (1.0 + 1e-12))
    throw std::out_of_range("grid: t1 beyond the law horizon");
}

namespace {

struct Norms {
  double l2 = 0.0;
  double max = 0.0;
};

Norms residual_level(const MovingSolution& sol, const GridSpec& grid, int n_x, int n_t) {
  const BoundaryLaw& law = sol.law();
  const PotentialModel& model = sol.model();
  const Mutation mut = sol.mutation();
  const int margin = model.singular() ? 3 : 1;
  const double dq = 1.0 / n_x;
  const double dt = (grid.t1 - grid.t0) / n_t;

  // field on lines of constant q = x / L(t)
  std::vector<std::vector<std::complex<double>>> psi(n_t + 1);
  for (int jt = 0; jt <= n_t; ++jt) {
    const double t = grid.t0 + jt * dt;
    const auto at = sol.slice(t);
    const double L = law.eval(t).L;
    psi[jt].resize(n_x + 1);
    for (int i = 0; i <= n_x; ++i) psi[jt][i] = at(i * dq * L);
  }

  double sum2 = 0.0, rmax = 0.0, scale = 0.0;
  long count = 0;
  for (int jt = 1; jt < n_t; ++jt) {
    const double t = grid.t0 + jt * dt;
    const BoundaryState s = law.eval(t);
    for (int i = margin; i <= n_x - margin; ++i) {
      const double q = i * dq;
      const std::complex<double> uqq =
          (psi[jt][i + 1] - 2.0 * psi[jt][i] + psi[jt][i - 1]) / (dq * dq);
      const std::complex<double> uq = (psi[jt][i + 1] - psi[jt][i - 1]) / (2.0 * dq);
      const std::complex<double> ut_line =
          (psi[jt + 1][i] - psi[jt - 1][i]) / (2.0 * dt);
      const std::complex<double> psi_xx = uqq / (s.L * s.L);
      const std::complex<double> psi_x = uq / s.L;
      const std::complex<double> psi_t = ut_line - q * s.Ldot * psi_x;
      const double V = assemble_potential(model, law, t, q * s.L, mut);
      const std::complex<double> R =
          -psi_xx + V * psi[jt][i] - std::complex<double>(0.0, 1.0) * psi_t;
      const double mag = std::abs(R);
      sum2 += mag * mag;
      rmax = std::max(rmax, mag);
      scale = std::max(scale,
                       std::abs(psi_xx) + std::abs(V * psi[jt][i]) + std::abs(psi_t));
      ++count;
    }
  }
  if (scale == 0.0) throw std::runtime_error("tdse_residual: trivial field");
  return {std::sqrt(sum2 / count) / scale, rmax / scale};
}

}  // namespace

ResidualReport tdse_residual(const MovingSolution& sol, const GridSpec& grid) {
  validate_grid(grid, sol.law());
  ResidualReport rep;
  rep.n_x = grid.n_x;
  rep.n_t = grid.n_t;
  const Norms fine = residual_level(sol, grid, grid.n_x, grid.n_t);
  rep.residual_l2 = fine.l2;
  rep.residual_max = fine.max;
  if (grid.n_x / 2 >= 16 && grid.n_t / 2 >= 16) {
    const Norms coarse = residual_level(sol, grid, grid.n_x / 2, grid.n_t / 2);
    rep.order_estimate = std::log2(coarse.l2 / fine.l2);
  } else {
    rep.order_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double mutation_residual_ratio(const MovingSolution& sol, const GridSpec& grid,
                               Mutation mut) {
  const Norms base = residual_level(sol.with_mutation(Mutation::None), grid,
                                    grid.n_x, grid.n_t);
  const Norms mutated = residual_level(sol.with_mutation(mut), grid, grid.n_x, grid.n_t);
  return mutated.max / base.max;
}

std::vector<double> fd_spectrum(const PotentialModel& model, int n_x, int k) {
  if (n_x < 200) throw std::invalid_argument("fd_spectrum: need n_x >= 200");
  if (k < 1 || k > 10) throw std::invalid_argument("fd_spectrum: need 1 <= k <= 10");

  const auto solve = [&model, k](int n) {
    const double h = 1.0 / n;
    std::vector<double> diag(n - 1), off(n - 2, -1.0 / (h * h));
    for (int i = 1; i < n; ++i) diag[i - 1] = 2.0 / (h * h) + model.potential(i * h);
    return num::lowest_eigenvalues(diag, off, k);
  };

  const std::vector<double> coarse = solve(n_x / 2);
  const std::vector<double> fine = solve(n_x);
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

PropagationReport propagate_cn(const PotentialModel& model, const BoundaryLaw& law,
                               const MovingSolution& initial, const GridSpec& grid) {
  validate_grid(grid, law);
  if (model.case1_c1())
    throw std::invalid_argument("propagate_cn: case1 composites have no separable frame");

  const int n_x = grid.n_x, n_t = grid.n_t;
  const double h = 1.0 / n_x;
  const int m = n_x - 1;

  std::vector<double> V(m);
  for (int i = 0; i < m; ++i) V[i] = model.potential((i + 1) * h);

  // transformed field chi at the initial clock reading
  const double tau0 = law.tau(grid.t0);
  std::vector<std::complex<double>> chi(m, 0.0);
  for (const auto& term : initial.terms()) {
    const std::complex<double> amp =
        term.c * std::polar(1.0, -term.mode.energy * tau0);
    for (int i = 0; i < m; ++i) chi[i] += amp * term.mode.eval((i + 1) * h);
  }

  const auto discrete_norm = [h](const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(h * s);
  };

  PropagationReport rep;
  const double norm0 = discrete_norm(chi);
  std::vector<std::complex<double>> rhs(m), diag(m);
  const double dt = (grid.t1 - grid.t0) / n_t;
  double tau_prev = tau0;
  for (int j = 0; j < n_t; ++j) {
    const double tau_next = law.tau(grid.t0 + (j + 1) * dt);
    const std::complex<double> a(0.0, 0.5 * (tau_next - tau_prev));
    tau_prev = tau_next;
    for (int i = 0; i < m; ++i) {
      std::complex<double> Hchi = (2.0 * chi[i]) / (h * h) + V[i] * chi[i];
      if (i > 0) Hchi -= chi[i - 1] / (h * h);
      if (i < m - 1) Hchi -= chi[i + 1] / (h * h);
      rhs[i] = chi[i] - a * Hchi;
      diag[i] = 1.0 + a * (2.0 / (h * h) + V[i]);
    }
    num::solve_tridiagonal(diag, -a / (h * h), rhs);
    chi.swap(rhs);
    rep.norm_drift = std::max(rep.norm_drift, std::abs(discrete_norm(chi) - norm0));
  }

  // map back to the physical frame and compare with the analytic field
  const double L1 = law.eval(grid.t1).L;
  const auto exact = initial.slice(grid.t1);
  rep.x.resize(m);
  rep.psi.resize(m);
  double err2 = 0.0;
  for (int i = 0; i < m; ++i) {
    rep.x[i] = (i + 1) * h * L1;
    rep.psi[i] = std::exp(phase(law, grid.t1, rep.x[i])) * chi[i];
    err2 += std::norm(rep.psi[i] - exact(rep.x[i]));
  }
  rep.l2_error = std::sqrt(err2 * h * L1);
  return rep;
}

double orthonormality(const PotentialModel& model, const BoundaryLaw& law,
                      double t, int k) {
  const int points = 4097;
  const double L = law.eval(t).L;
  const std::vector<double> w = num::simpson_weights(points, 0.0, L);

  std::vector<std::vector<std::complex<double>>> field;
  for (int n : model.admissible_indices(k)) {
    const auto at = assemble_mode(model, law, n).slice(t);
    std::vector<std::complex<double>> row(points);
    for (int i = 0; i < points; ++i) row[i] = at(i * L / (points - 1));
    field.push_back(std::move(row));
  }

  double dev = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      std::complex<double> g = 0.0;
      for (int i = 0; i < points; ++i) g += w[i] * std::conj(field[a][i]) * field[b][i];
      dev = std::max(dev, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return dev;
}

}  // namespace mwell
