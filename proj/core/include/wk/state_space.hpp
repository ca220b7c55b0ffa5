#pragma once

// Hilbert-space vectors, rays and the projective chart, expectation values,
// two-level geometric phase, and history projectors on tensor-product spaces.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wk/dual.hpp"

namespace wk {

struct ProjectivePoint {
  Eigen::VectorXcd w;
  /// Index of the homogeneous component divided out.
  int chart = 0;
};

class StateVector {
 public:
  /// Throws NullVectorError for the zero vector; the inner form must be
  /// Hermitian (NonHermitianError) and positive-definite (DomainError).
  explicit StateVector(Eigen::VectorXcd components,
                       std::optional<Eigen::MatrixXcd> inner_form = std::nullopt);

  /// Homogeneous representative with 1 in the chart slot.
  static StateVector from_projective(const ProjectivePoint& p,
                                     std::optional<Eigen::MatrixXcd> inner_form = std::nullopt);

  int size() const { return static_cast<int>(z_.size()); }
  const Eigen::VectorXcd& components() const { return z_; }
  const Eigen::MatrixXcd& inner_form() const { return delta_; }

  StateVector scaled(Complex c) const;
  StateVector normalized() const;

 private:
  Eigen::VectorXcd z_;
  Eigen::MatrixXcd delta_;
};

/// sum Delta_{ab} conj(Z^a) Z^b.
double norm_squared(const StateVector& psi);

/// w^i = Z^i / Z^chart for i != chart; ChartError when Z^chart vanishes.
ProjectivePoint to_projective(const StateVector& psi, int chart = 0);

/// 1/2 ln(1 + sum |w|^2).
double kahler_potential(const ProjectivePoint& p);

Eigen::MatrixXcd fubini_study_metric(const ProjectivePoint& p);

class Observable {
 public:
  /// Throws NonHermitianError unless Hermitian within 1e-12.
  explicit Observable(Eigen::MatrixXcd matrix);
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

/// <psi|S|psi> / <psi|psi> with the state's inner form. With a non-identity
/// form, Delta S must be Hermitian (NonHermitianError otherwise).
double expectation(const StateVector& psi, const Observable& s);

/// sum Delta_{ab} conj(phi^a) psi^b.
Complex transition_amplitude(const StateVector& phi, const StateVector& psi);

/// Closed loop of field directions b(t), t in [0, 1], for H = b . sigma.
class BlochPath {
 public:
  using Field = std::function<Eigen::Vector3d(double)>;
  explicit BlochPath(Field field) : field_(std::move(field)) {}

  static BlochPath colatitude_circle(double theta, double phi0 = 0.0, double magnitude = 1.0);
  /// Straight segments through the vertices, closed back to the first.
  static BlochPath polygon(std::vector<Eigen::Vector3d> vertices);

  Eigen::Vector3d operator()(double t) const { return field_(t); }

 private:
  Field field_;
};

/// Minimal eigenvalue gap allowed along a Bloch path.
inline constexpr double kDegeneracyGap = 1e-8;

/// Geometric phase of the upper eigenstate, -arg prod <psi_k|psi_k+1>, in (-pi, pi].
double berry_phase_two_level(const BlochPath& path, int steps);

/// Same discrete formula for an explicit closed sequence of states.
double berry_phase_from_states(const std::vector<StateVector>& states);

/// Max entrywise residual of E^2 = E and E^H = E.
double projector_residual(const Eigen::MatrixXcd& e);

class HistoryProjector {
 public:
  /// NotProjectorError unless each factor is a Hermitian idempotent within
  /// 1e-10; TimeOrderError unless times strictly increase.
  HistoryProjector(std::vector<Eigen::MatrixXcd> factors, std::vector<double> times);

  const std::vector<Eigen::MatrixXcd>& factors() const { return factors_; }
  const std::vector<double>& times() const { return times_; }
  int length() const { return static_cast<int>(factors_.size()); }

  /// E_1 (x) E_2 (x) ... (x) E_n.
  Eigen::MatrixXcd matrix() const;
  /// Product of factor ranks.
  int rank() const;

 private:
  std::vector<Eigen::MatrixXcd> factors_;
  std::vector<double> times_;
};

/// Set of mutually orthogonal histories on the same history space.
class HistoryFramework {
 public:
  /// DomainError unless Y_a Y_b = 0 within 1e-10 for a != b.
  explicit HistoryFramework(std::vector<HistoryProjector> histories);
  const std::vector<HistoryProjector>& histories() const { return histories_; }

 private:
  std::vector<HistoryProjector> histories_;
};

/// d^n; OverflowError past 2^63 - 1.
std::int64_t history_space_dim(int d, int n);

struct BranchWeight {
  int n = 0;
  double lambda = 1.0;
  double weight = 1.0;
};

struct WeightSequence {
  std::vector<BranchWeight> branches;
  /// weights / sum(weights).
  std::vector<double> normalized;
};

WeightSequence measurement_weight_sequence(const std::vector<int>& n_list, double lambda);

}  // namespace wk
