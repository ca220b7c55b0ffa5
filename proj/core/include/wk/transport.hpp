#pragma once

// Parallel transport under the gauge-corrected connection, loop holonomy,
// gauge line integrals and the quantized length factor.

#include <vector>

#include <Eigen/Dense>

#include "wk/curve.hpp"
#include "wk/manifold.hpp"

namespace wk {

struct TransportOptions {
  /// Re-run at twice the steps and compare length factors.
  bool check_convergence = true;
  double convergence_bound = 1e-6;
};

struct TransportResult {
  Eigen::VectorXcd end_vector;
  double length_factor = 1.0;
  /// arg det of the complex-linear part of the transport map, in (-pi, pi].
  double phase = 0.0;
  /// Complex-linear part C of v -> C v + D conj(v).
  Eigen::MatrixXcd holonomy_matrix;
  /// Antilinear part D; vanishes when the connection has no mixed block.
  Eigen::MatrixXcd antilinear_part;
  int steps = 0;
  /// |length_factor(2 steps) - length_factor(steps)|, or 0 when unchecked.
  double convergence_delta = 0.0;
  /// Loops only: deviation of the unit-scaled map from a g-isometry.
  double unitarity_residual = 0.0;
  /// Loops only: arguments of the eigenvalues of holonomy_matrix / scale.
  std::vector<double> eigen_phases;
};

TransportResult parallel_transport(const ManifoldSpec& spec, const Curve& c,
                                   const Eigen::VectorXcd& v0, int steps,
                                   const TransportOptions& options = {});

/// Transports the full real frame around a closed curve; length_factor is the
/// scale |det R|^(1/2n) of the real 2n x 2n holonomy.
TransportResult loop_holonomy(const ManifoldSpec& spec, const Curve& c, int steps,
                              const TransportOptions& options = {});

/// Integral of A_mu zdot^mu + A_mubar zdotbar^mu over the curve (composite Simpson).
Complex gauge_line_integral(const ManifoldSpec& spec, const Curve& c, int steps);

/// exp(n * lambda); OverflowError for |n lambda| > 700.
double length_holonomy_factor(int n, double lambda);

/// Winding of c's `coordinate` component around the puncture's.
int winding_number(const Curve& c, const ComplexPoint& puncture, int coordinate = 0);

}  // namespace wk
