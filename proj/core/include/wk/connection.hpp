#pragma once

// Base and gauge-corrected (starred) Christoffel symbols, the covariant
// derivative of the complex structure, and curvature.
//
// Index conventions: Gamma^chi_{mu lambda} has the transported vector in the
// first lower slot and the derivative direction in the second. Over the 2n
// Yano indices, 0..n-1 are holomorphic and n..2n-1 the barred ones.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wk/dual.hpp"
#include "wk/field.hpp"
#include "wk/manifold.hpp"
#include "wk/tensor.hpp"

namespace wk {

/// Which base connection the starred symbols are built on. Only levi_civita
/// makes the corrected symbols gauge invariant; chern is kept for comparison.
enum class ConnectionConvention { levi_civita, chern };

template <int L>
struct ConnectionBlocks {
  Rank3<Sc<L>> pure;   // Gamma^chi_{mu lambda}
  Rank3<Sc<L>> mixed;  // Gamma^chi_{mu lambdabar}
};

/// Connection blocks at dual level L; uses the metric at level L + 1.
template <int L>
ConnectionBlocks<L> connection_blocks(const ManifoldSpec& spec, std::span<const Sc<L>> z,
                                      bool gauged,
                                      ConnectionConvention conv = ConnectionConvention::levi_civita);

/// Component of the full (torsion-free) connection over 2n indices, assembled
/// from the two independent blocks by symmetry and self-conjugacy.
template <class S>
S full_connection(const Rank3<S>& pure, const Rank3<S>& mixed, int a, int b, int c) {
  const int n = pure.n;
  if (a >= n) {
    auto flip = [n](int i) { return i < n ? i + n : i - n; };
    return conj(full_connection(pure, mixed, a - n, flip(b), flip(c)));
  }
  if (b < n && c < n) return pure(a, b, c);
  if (b < n) return mixed(a, b, c - n);
  if (c < n) return mixed(a, c, b - n);
  return lift<S>(0.0);
}

struct ConnectionCoefficients {
  int dim = 0;
  Rank3<Complex> pure;
  Rank3<Complex> mixed;
  ComplexPoint point;
  bool gauged = false;
  ConnectionConvention convention = ConnectionConvention::levi_civita;

  Complex full(int a, int b, int c) const { return full_connection(pure, mixed, a, b, c); }
};

ConnectionCoefficients base_christoffel(
    const ManifoldSpec& spec, const ComplexPoint& p,
    ConnectionConvention conv = ConnectionConvention::levi_civita);

ConnectionCoefficients weyl_christoffel(
    const ManifoldSpec& spec, const ComplexPoint& p,
    ConnectionConvention conv = ConnectionConvention::levi_civita);

/// nabla_k F^i_j over 2n indices, stored [k][i][j].
struct StructureDerivative {
  int dim = 0;
  std::vector<Complex> a;

  Complex operator()(int k, int i, int j) const {
    const int m = 2 * dim;
    return a[(static_cast<std::size_t>(k) * m + i) * m + j];
  }
  double max_abs() const;
};

StructureDerivative covariant_derivative_F(const ManifoldSpec& spec, const ComplexPoint& p);

template <int L>
struct CurvatureData {
  int dim = 0;
  std::vector<Sc<L>> riemann;  // [a][b][c][d] -> R^a_{bcd}
  Mat<Sc<L>> ricci;            // 2n x 2n, Ric_{bd} = R^a_{bad}
  Sc<L> scalar{};
};

/// Curvature of the starred connection at level L (uses the metric at L + 2).
template <int L>
CurvatureData<L> curvature_at(const ManifoldSpec& spec, std::span<const Sc<L>> z);

struct CurvatureTensors {
  int dim = 0;
  std::vector<Complex> riemann;
  Eigen::MatrixXcd ricci;       // Ric_{mu nubar}
  Eigen::MatrixXcd ricci_full;  // all 2n x 2n components
  double scalar = 0.0;
  double scalar_imag = 0.0;
  ComplexPoint point;

  Complex riemann_at(int a, int b, int c, int d) const {
    const int m = 2 * dim;
    return riemann[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d];
  }
};

struct CurvatureOptions {
  double imag_tolerance = 1e-6;
};

CurvatureTensors curvature(const ManifoldSpec& spec, const ComplexPoint& p,
                           const CurvatureOptions& options = {});

double scalar_curvature(const ManifoldSpec& spec, const ComplexPoint& p);

/// Scalar curvature as a field, differentiable one level (enough for d(phi F)).
ScalarField scalar_curvature_field(const ManifoldSpec& spec);

}  // namespace wk
