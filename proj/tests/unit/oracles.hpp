#pragma once

// Independent reference computations for the tests: plain central finite
// differences on level-0 evaluators, closed forms and random draws. Nothing
// here touches the dual-number machinery under test.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;
using ScalarFn = std::function<Complex(const Point&)>;

inline Point shifted(Point z, int index, Complex delta) {
  z[index] += delta;
  return z;
}

/// 4th-order central difference along a real direction (dx or dy of z^index).
inline Complex directional(const ScalarFn& f, const Point& z, int index, bool imaginary,
                           double h = 1e-4) {
  const Complex e = imaginary ? Complex(0.0, h) : Complex(h, 0.0);
  return (-f(shifted(z, index, 2.0 * e)) + 8.0 * f(shifted(z, index, e)) -
          8.0 * f(shifted(z, index, -e)) + f(shifted(z, index, -2.0 * e))) /
         (12.0 * h);
}

inline Complex d_holo(const ScalarFn& f, const Point& z, int i, double h = 1e-4) {
  return 0.5 * (directional(f, z, i, false, h) - Complex(0, 1) * directional(f, z, i, true, h));
}

inline Complex d_anti(const ScalarFn& f, const Point& z, int i, double h = 1e-4) {
  return 0.5 * (directional(f, z, i, false, h) + Complex(0, 1) * directional(f, z, i, true, h));
}

/// d_mu d_nubar f by nesting 2nd-order central differences.
inline Complex mixed_hessian(const ScalarFn& f, const Point& z, int mu, int nu, double h = 1e-4) {
  ScalarFn inner = [&](const Point& w) { return d_anti(f, w, nu, h); };
  return d_holo(inner, z, mu, h);
}

inline double fs_potential(const Point& w) {
  double r2 = 0.0;
  for (auto x : w) r2 += std::norm(x);
  return 0.5 * std::log1p(r2);
}

/// Fubini-Study metric by finite differences of its potential.
inline Eigen::MatrixXcd fs_metric_fd(const Point& w, double h = 1e-4) {
  const int n = static_cast<int>(w.size());
  ScalarFn k = [](const Point& p) { return Complex(fs_potential(p), 0.0); };
  Eigen::MatrixXcd g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g(a, b) = mixed_hessian(k, w, a, b, h);
  return g;
}

inline Point random_point(std::mt19937_64& rng, int n, double radius = 0.9) {
  std::uniform_real_distribution<double> u(-radius, radius);
  Point z(n);
  for (auto& x : z) x = Complex(u(rng), u(rng)) / std::sqrt(2.0);
  return z;
}

/// Haar-ish random unitary from QR of a Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

/// Rank-r orthogonal projector onto r random orthonormal columns.
inline Eigen::MatrixXcd random_projector(std::mt19937_64& rng, int d, int r) {
  Eigen::MatrixXcd q = random_unitary(rng, d).leftCols(r);
  return q * q.adjoint();
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
