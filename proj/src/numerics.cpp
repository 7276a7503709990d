#include "mwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mwell::num {

namespace {

double simpson_rec(const Fn& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, double scale,
                   int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // second test: the correction drowned in roundoff at the integral's scale
  if (std::abs(delta) <= 15.0 * tol || scale + delta == scale)
    return left + right + delta / 15.0;
  if (depth <= 0) throw std::runtime_error("adaptive quadrature did not converge");
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, scale, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, scale, depth - 1);
}

}  // namespace

double integrate(const Fn& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  // 13 seed panels so oscillatory integrands cannot vanish at every sample
  // the dyadic recursion would probe
  constexpr int panels = 13;
  const double h = (b - a) / panels;
  struct Panel {
    double a, fa, b, fb, m, fm, whole;
  };
  Panel seed[panels];
  double scale = 0.0;
  for (int p = 0; p < panels; ++p) {
    Panel& s = seed[p];
    s.a = a + p * h;
    s.b = p + 1 == panels ? b : a + (p + 1) * h;
    s.fa = f(s.a);
    s.fb = f(s.b);
    s.m = 0.5 * (s.a + s.b);
    s.fm = f(s.m);
    s.whole = (s.b - s.a) / 6.0 * (s.fa + 4.0 * s.fm + s.fb);
    scale += std::abs(s.whole);
  }
  double total = 0.0;
  for (const Panel& s : seed)
    total += simpson_rec(f, s.a, s.fa, s.b, s.fb, s.m, s.fm, s.whole,
                         abs_tol / panels, scale, max_depth);
  return total;
}

double composite_simpson(const Fn& f, double a, double b, int intervals) {
  if (intervals < 2 || intervals % 2 != 0)
    throw std::invalid_argument("composite_simpson: intervals must be even and >= 2");
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

std::vector<double> simpson_weights(int points, double a, double b) {
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument("simpson_weights: points must be odd and >= 3");
  const double h = (b - a) / (points - 1);
  std::vector<double> w(points, 0.0);
  w.front() = w.back() = h / 3.0;
  for (int i = 1; i + 1 < points; ++i) w[i] = (i % 2 ? 4.0 : 2.0) * h / 3.0;
  return w;
}

namespace {

double d1_stencil(const Fn& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double d2_stencil(const Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
         (12 * h * h);
}

}  // namespace

double derivative1(const Fn& f, double x, double h) {
  return (16.0 * d1_stencil(f, x, 0.5 * h) - d1_stencil(f, x, h)) / 15.0;
}

double derivative2(const Fn& f, double x, double h) {
  return (16.0 * d2_stencil(f, x, 0.5 * h) - d2_stencil(f, x, h)) / 15.0;
}

namespace {

// number of eigenvalues strictly below x (Sturm sequence / LDL^T count)
int count_below(std::span<const double> diag, std::span<const double> off, double x) {
  int count = 0;
  double d = diag[0] - x;
  if (d < 0) ++count;
  for (size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(d) < 1e-300) d = d < 0 ? -1e-300 : 1e-300;
    d = diag[i] - x - off[i - 1] * off[i - 1] / d;
    if (d < 0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                       std::span<const double> off, int k) {
  const int n = static_cast<int>(diag.size());
  if (n < 1 || static_cast<int>(off.size()) != n - 1)
    throw std::invalid_argument("lowest_eigenvalues: bad dimensions");
  if (k < 1 || k > n) throw std::invalid_argument("lowest_eigenvalues: bad k");

  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i < n - 1) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }

  std::vector<double> eigs(k);
  for (int idx = 0; idx < k; ++idx) {
    double a = lo, b = hi;
    for (int it = 0;
         it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
      const double m = 0.5 * (a + b);
      if (count_below(diag, off, m) <= idx)
        a = m;
      else
        b = m;
    }
    eigs[idx] = 0.5 * (a + b);
  }
  return eigs;
}

void solve_tridiagonal(std::span<const std::complex<double>> diag,
                       std::complex<double> off,
                       std::span<std::complex<double>> rhs) {
  const size_t n = diag.size();
  if (rhs.size() != n) throw std::invalid_argument("solve_tridiagonal: size mismatch");
  std::vector<std::complex<double>> c(n);
  c[0] = off / diag[0];
  rhs[0] /= diag[0];
  for (size_t i = 1; i < n; ++i) {
    const std::complex<double> m = diag[i] - off * c[i - 1];
    c[i] = off / m;
    rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
  }
  for (size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace mwell::num
