#include "wk/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include <unsupported/Eigen/KroneckerProduct>

#include "wk/errors.hpp"
#include "wk/fubini_study.hpp"
#include "wk/tensor.hpp"
#include "wk/transport.hpp"

namespace wk {

namespace {

double hermitian_residual(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double principal(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

void require_finite(const ProjectivePoint& p) {
  if (!p.w.allFinite()) throw NonFiniteError("projective coordinates must be finite");
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd components, std::optional<Eigen::MatrixXcd> inner_form)
    : z_(std::move(components)) {
  if (z_.size() < 1) throw DimensionError("state vector needs at least one component");
  if (!z_.allFinite()) throw NonFiniteError("state vector components must be finite");
  if (z_.cwiseAbs().maxCoeff() == 0.0) throw NullVectorError("the null vector is not a state");
  delta_ = inner_form ? std::move(*inner_form) : Eigen::MatrixXcd::Identity(z_.size(), z_.size());
  if (delta_.rows() != z_.size() || delta_.cols() != z_.size()) {
    throw DimensionError("inner form does not match the state dimension");
  }
  if (hermitian_residual(delta_) > 1e-12) throw NonHermitianError("inner form is not Hermitian");
  if (Eigen::LLT<Eigen::MatrixXcd>(delta_).info() != Eigen::Success) {
    throw DomainError("inner form is not positive-definite");
  }
}

StateVector StateVector::from_projective(const ProjectivePoint& p,
                                         std::optional<Eigen::MatrixXcd> inner_form) {
  require_finite(p);
  const int size = static_cast<int>(p.w.size()) + 1;
  if (p.chart < 0 || p.chart >= size) throw ChartError("chart index out of range");
  Eigen::VectorXcd z(size);
  for (int i = 0, k = 0; i < size; ++i) z(i) = i == p.chart ? Complex(1.0) : p.w(k++);
  return StateVector(std::move(z), std::move(inner_form));
}

StateVector StateVector::scaled(Complex c) const {
  if (c == Complex(0.0)) throw NullVectorError("scaling by zero gives the null vector");
  return StateVector(z_ * c, delta_);
}

StateVector StateVector::normalized() const { return scaled(1.0 / std::sqrt(norm_squared(*this))); }

double norm_squared(const StateVector& psi) {
  const auto& z = psi.components();
  Complex v = z.dot(psi.inner_form() * z);  // dot conjugates the left operand
  if (!(v.real() > 0.0)) throw NullVectorError("state has non-positive norm");
  return v.real();
}

ProjectivePoint to_projective(const StateVector& psi, int chart) {
  const auto& z = psi.components();
  if (chart < 0 || chart >= z.size()) throw ChartError("chart index out of range");
  const Complex d = z(chart);
  if (std::abs(d) <= 1e-14 * z.cwiseAbs().maxCoeff()) {
    throw ChartError("component " + std::to_string(chart) + " vanishes; choose another chart");
  }
  ProjectivePoint p{Eigen::VectorXcd(z.size() - 1), chart};
  for (int i = 0, k = 0; i < z.size(); ++i) {
    if (i != chart) p.w(k++) = z(i) / d;
  }
  return p;
}

double kahler_potential(const ProjectivePoint& p) {
  require_finite(p);
  std::vector<Complex> w(p.w.data(), p.w.data() + p.w.size());
  return fubini_study_potential<Complex>(std::span<const Complex>(w)).real();
}

Eigen::MatrixXcd fubini_study_metric(const ProjectivePoint& p) {
  require_finite(p);
  std::vector<Complex> w(p.w.data(), p.w.data() + p.w.size());
  return to_eigen(fubini_study_matrix<Complex>(std::span<const Complex>(w)));
}

Observable::Observable(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) throw DimensionError("observable must be square");
  if (!m_.allFinite()) throw NonFiniteError("observable entries must be finite");
  if (hermitian_residual(m_) > 1e-12) throw NonHermitianError("observable is not Hermitian");
}

double expectation(const StateVector& psi, const Observable& s) {
  if (s.matrix().rows() != psi.size()) {
    throw DimensionError("observable does not match the state dimension");
  }
  const Eigen::MatrixXcd ds = psi.inner_form() * s.matrix();
  const double scale = std::max(1.0, ds.cwiseAbs().maxCoeff());
  if (hermitian_residual(ds) > 1e-12 * scale) {
    throw NonHermitianError("observable is not self-adjoint for the state's inner form");
  }
  const auto& z = psi.components();
  Complex num = z.dot(ds * z);
  double den = norm_squared(psi);
  if (std::abs(num.imag()) > 1e-10 * std::max(1.0, std::abs(num))) {
    throw ToleranceError("expectation value has an imaginary part");
  }
  return num.real() / den;
}

Complex transition_amplitude(const StateVector& phi, const StateVector& psi) {
  if (phi.size() != psi.size()) throw DimensionError("states differ in dimension");
  if ((phi.inner_form() - psi.inner_form()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DimensionError("states carry different inner forms");
  }
  return phi.components().dot(psi.inner_form() * psi.components());
}

BlochPath BlochPath::colatitude_circle(double theta, double phi0, double magnitude) {
  if (!std::isfinite(theta) || !std::isfinite(phi0)) throw DomainError("angles must be finite");
  if (!(magnitude > 0.0)) throw DomainError("field magnitude must be positive");
  return BlochPath([theta, phi0, magnitude](double t) {
    const double phi = phi0 + 2.0 * std::numbers::pi * t;
    return Eigen::Vector3d(magnitude * std::sin(theta) * std::cos(phi),
                           magnitude * std::sin(theta) * std::sin(phi),
                           magnitude * std::cos(theta));
  });
}

BlochPath BlochPath::polygon(std::vector<Eigen::Vector3d> vertices) {
  if (vertices.size() < 3) throw DomainError("a Bloch polygon needs at least three vertices");
  return BlochPath([v = std::move(vertices)](double t) {
    const double m = static_cast<double>(v.size());
    const double s = std::clamp(t, 0.0, 1.0) * m;
    const std::size_t k = std::min(static_cast<std::size_t>(s), v.size() - 1);
    const double f = s - static_cast<double>(k);
    return Eigen::Vector3d((1.0 - f) * v[k] + f * v[(k + 1) % v.size()]);
  });
}

double berry_phase_two_level(const BlochPath& path, int steps) {
  if (steps < 3) throw StepError("Berry phase needs at least 3 steps");
  const Complex i(0.0, 1.0);
  std::vector<StateVector> states;
  states.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    Eigen::Vector3d b = path(static_cast<double>(k) / steps);
    Eigen::Matrix2cd h;
    h << b.z(), b.x() - i * b.y(), b.x() + i * b.y(), -b.z();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(h);
    if (eig.eigenvalues()(1) - eig.eigenvalues()(0) < kDegeneracyGap) {
      throw DegeneracyError("eigenvalue gap closes along the Bloch path");
    }
    states.emplace_back(eig.eigenvectors().col(1));
  }
  return berry_phase_from_states(states);
}

double berry_phase_from_states(const std::vector<StateVector>& states) {
  if (states.size() < 2) throw DomainError("a closed state loop needs at least two states");
  Complex product = 1.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& next = states[(k + 1) % states.size()];
    Complex overlap = transition_amplitude(states[k], next);
    if (std::abs(overlap) == 0.0) throw DegeneracyError("consecutive states are orthogonal");
    // Normalize each factor to keep the product well scaled.
    product *= overlap / std::abs(overlap);
  }
  return principal(-std::arg(product));
}

double projector_residual(const Eigen::MatrixXcd& e) {
  return std::max((e * e - e).cwiseAbs().maxCoeff(), hermitian_residual(e));
}

HistoryProjector::HistoryProjector(std::vector<Eigen::MatrixXcd> factors, std::vector<double> times)
    : factors_(std::move(factors)), times_(std::move(times)) {
  if (factors_.empty()) throw DimensionError("a history needs at least one factor");
  if (factors_.size() != times_.size()) {
    throw DimensionError("history needs one time per factor");
  }
  const auto d = factors_.front().rows();
  for (const auto& e : factors_) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("history factors must all be d x d");
    if (!e.allFinite() || projector_residual(e) > 1e-10) {
      throw NotProjectorError("history factor is not a Hermitian idempotent");
    }
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw TimeOrderError("history times must strictly increase");
  }
}

Eigen::MatrixXcd HistoryProjector::matrix() const {
  history_space_dim(static_cast<int>(factors_.front().rows()), length());
  Eigen::MatrixXcd y = factors_.front();
  for (std::size_t k = 1; k < factors_.size(); ++k) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(y, factors_[k]);
    y = std::move(next);
  }
  return y;
}

int HistoryProjector::rank() const {
  int r = 1;
  for (const auto& e : factors_) r *= static_cast<int>(std::lround(e.trace().real()));
  return r;
}

HistoryFramework::HistoryFramework(std::vector<HistoryProjector> histories)
    : histories_(std::move(histories)) {
  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& h : histories_) mats.push_back(h.matrix());
  for (std::size_t a = 0; a < mats.size(); ++a) {
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      if (mats[a].rows() != mats[b].rows()) {
        throw DimensionError("histories live on different history spaces");
      }
      if ((mats[a] * mats[b]).cwiseAbs().maxCoeff() > 1e-10) {
        throw DomainError("histories " + std::to_string(a) + " and " + std::to_string(b) +
                          " are not orthogonal");
      }
    }
  }
}

std::int64_t history_space_dim(int d, int n) {
  if (d < 1 || n < 1) throw DomainError("history space needs d >= 1 and n >= 1");
  std::int64_t out = 1;
  for (int k = 0; k < n; ++k) {
    if (out > std::numeric_limits<std::int64_t>::max() / d) {
      throw OverflowError("history space dimension overflows 64 bits");
    }
    out *= d;
  }
  return out;
}

WeightSequence measurement_weight_sequence(const std::vector<int>& n_list, double lambda) {
  WeightSequence out;
  double total = 0.0;
  for (int n : n_list) {
    double w = length_holonomy_factor(n, lambda);
    out.branches.push_back({n, lambda, w});
    total += w;
  }
  for (const auto& b : out.branches) out.normalized.push_back(b.weight / total);
  return out;
}

}  // namespace wk
