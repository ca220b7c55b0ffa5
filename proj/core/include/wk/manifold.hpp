#pragma once

// Points, Hermitian metric fields, Weyl gauge fields and gauge
// transformations on a complex chart. Every other module evaluates geometry
// through the templated `metric_matrix` / `gauge_components` entry points,
// which run at any dual level so that derivatives come from forward-mode AD.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wk/dual.hpp"
#include "wk/errors.hpp"
#include "wk/tensor.hpp"

namespace wk {

class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::vector<Complex> coords, int chart_id = 0);
  ComplexPoint(std::initializer_list<Complex> coords) : ComplexPoint(std::vector<Complex>(coords)) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  int chart_id() const { return chart_id_; }
  const std::vector<Complex>& coords() const { return coords_; }
  std::span<const Complex> span() const { return coords_; }
  Complex operator[](int i) const { return coords_[i]; }

 private:
  std::vector<Complex> coords_;
  int chart_id_ = 0;
};

/// Real-valued closed-form scalar function f on the chart, with its analytic
/// holomorphic gradient d_mu f. Used as ln(lambda) for gauge transformations,
/// as the potential of exact gauge fields and as conformal factors.
struct ScalarFunction {
  enum class Kind { constant, re_linear, radial_log, radial_quadratic };

  Kind kind = Kind::constant;
  double value = 0.0;                 // constant value, or offset for re_linear
  std::vector<Complex> coefficients;  // re_linear: f = Re(sum a_mu z^mu) + value
  double alpha = 0.0;                 // radial_log: ln(1 + alpha r^2); radial_quadratic: alpha r^2

  static ScalarFunction constant(double c);
  static ScalarFunction re_linear(std::vector<Complex> a, double offset = 0.0);
  static ScalarFunction radial_log(double alpha);
  static ScalarFunction radial_quadratic(double alpha);

  template <class S>
  S eval(std::span<const S> z) const;

  /// d f / d z^mu for every mu; the antiholomorphic half is its conjugate.
  template <class S>
  std::vector<S> gradient(std::span<const S> z) const;
};

enum class MetricFamily { flat, fubini_study, potential_derived, table_driven };
enum class GaugeFamily { zero, exact, angular, table_driven };

std::string to_string(MetricFamily f);
std::string to_string(GaugeFamily f);

/// Kähler potential K; the potential_derived metric is g = d dbar K.
struct Potential {
  enum class Kind { fubini_study, radial_polynomial };
  Kind kind = Kind::fubini_study;
  double scale = 0.5;                // fubini_study: K = scale * ln(1 + r^2)
  std::vector<double> coefficients;  // radial_polynomial: K = sum_k c_k r^{2k}

  template <class S>
  S eval(std::span<const S> z) const;
};

/// Sampled values for the table_driven families. Lookup is nearest-sample;
/// tables carry no derivative information.
struct SampleTable {
  std::vector<std::vector<Complex>> points;
  std::vector<Eigen::MatrixXcd> values;

  std::size_t nearest(std::span<const Complex> z) const;
};

class MetricField {
 public:
  static MetricField flat(int dim);
  static MetricField fubini_study(int dim);
  static MetricField from_potential(int dim, Potential potential);
  static MetricField from_table(int dim, SampleTable table);

  /// g -> exp(2 f) g.
  MetricField with_conformal(ScalarFunction f) const;

  int dim() const { return dim_; }
  MetricFamily family() const { return family_; }
  const std::optional<ScalarFunction>& conformal() const { return conformal_; }
  const Potential& potential() const { return potential_; }
  const SampleTable* table() const { return table_.get(); }

 private:
  int dim_ = 1;
  MetricFamily family_ = MetricFamily::flat;
  std::optional<ScalarFunction> conformal_;
  Potential potential_;
  std::shared_ptr<const SampleTable> table_;
};

class GaugeField {
 public:
  static GaugeField zero(int dim);
  /// A = d f.
  static GaugeField exact(int dim, ScalarFunction f);
  /// A = c d(theta) around `puncture` in coordinate `coordinate`:
  /// A_k = -i c / (2 (z^k - p)).
  static GaugeField angular(int dim, double c, int coordinate = 0, Complex puncture = {});
  static GaugeField from_table(int dim, SampleTable table);

  int dim() const { return dim_; }
  GaugeFamily family() const { return family_; }
  const ScalarFunction& potential() const { return potential_; }
  double winding_strength() const { return c_; }
  int coordinate() const { return coordinate_; }
  Complex puncture() const { return puncture_; }
  const SampleTable* table() const { return table_.get(); }

 private:
  int dim_ = 1;
  GaugeFamily family_ = GaugeFamily::zero;
  ScalarFunction potential_;
  double c_ = 0.0;
  int coordinate_ = 0;
  Complex puncture_{};
  std::shared_ptr<const SampleTable> table_;
};

/// lambda = exp(sum of log factors) > 0.
class GaugeTransformation {
 public:
  GaugeTransformation() = default;
  static GaugeTransformation from_log(ScalarFunction log_lambda);
  static GaugeTransformation constant(double lambda);
  /// lambda = exp(Re(sum a_mu z^mu)).
  static GaugeTransformation exp_re_linear(std::vector<Complex> a);
  /// lambda = 1 + alpha |z|^2.
  static GaugeTransformation radial(double alpha);
  /// Pointwise product lambda_1 * lambda_2.
  static GaugeTransformation compose(const GaugeTransformation& a, const GaugeTransformation& b);

  double lambda(const ComplexPoint& p) const;
  Eigen::VectorXcd log_gradient(const ComplexPoint& p) const;
  const std::vector<ScalarFunction>& log_factors() const { return log_factors_; }

 private:
  std::vector<ScalarFunction> log_factors_;
};

class ManifoldSpec {
 public:
  ManifoldSpec(MetricField metric, GaugeField gauge);

  int dim() const { return metric_.dim(); }
  const MetricField& metric() const { return metric_; }
  const GaugeField& gauge() const { return gauge_; }
  int chart_id() const { return chart_id_; }
  /// Accumulated ln(lambda) of all applied gauge transformations.
  const std::vector<ScalarFunction>& weyl_factors() const { return weyl_factors_; }

  ManifoldSpec with_chart(int chart) const;
  ManifoldSpec with_gauge(GaugeField gauge) const;
  /// True when every evaluator has closed-form derivatives.
  bool differentiable() const;

 private:
  friend ManifoldSpec apply_gauge(const ManifoldSpec&, const GaugeTransformation&);
  MetricField metric_;
  GaugeField gauge_;
  std::vector<ScalarFunction> weyl_factors_;
  int chart_id_ = 0;
};

// Level-generic evaluation (explicitly instantiated for 0..kMaxLevel) ---------

template <int L>
Mat<Sc<L>> metric_matrix(const ManifoldSpec& spec, std::span<const Sc<L>> z);

template <int L>
std::vector<Sc<L>> gauge_components(const ManifoldSpec& spec, std::span<const Sc<L>> z);

// Operations -------------------------------------------------------------------

/// g_{mu nubar}(p); Hermitian positive-definite.
Eigen::MatrixXcd evaluate_metric(const ManifoldSpec& spec, const ComplexPoint& p);

/// A_mu(p); barred components are the conjugates.
Eigen::VectorXcd evaluate_gauge(const ManifoldSpec& spec, const ComplexPoint& p);

struct JetValue {
  Eigen::MatrixXcd value;
  std::vector<Eigen::MatrixXcd> d_holo;  // [lambda] -> d_lambda g
  std::vector<Eigen::MatrixXcd> d_anti;  // [lambda] -> d_lambdabar g
  /// [mu][nu] -> d_mu d_nubar g; empty unless order 2 was requested.
  std::vector<std::vector<Eigen::MatrixXcd>> second;
};

struct JetOptions {
  bool cross_check = false;
  double fd_step = 1e-5;
  double fd_step_second = 1e-4;
  double tolerance = 1e-6;
};

JetValue metric_jet(const ManifoldSpec& spec, const ComplexPoint& p, int order,
                    const JetOptions& options = {});

/// ds -> lambda ds, A -> A + d ln(lambda). The input is left untouched.
ManifoldSpec apply_gauge(const ManifoldSpec& spec, const GaugeTransformation& t);

/// Co-tensor weights under ds -> lambda ds.
inline constexpr int kMetricPower = 2;
inline constexpr int kComplexStructurePower = 0;
inline constexpr int kLoweredStructurePower = 2;
inline constexpr int kScalarCurvaturePower = -2;

/// lambda^N T.
template <class T>
T cotensor_rescale(const T& t, int power, double lambda_value) {
  if (!(lambda_value > 0.0)) throw DomainError("cotensor_rescale needs lambda > 0");
  return t * std::pow(lambda_value, power);
}

/// F^i_j = diag(+i 1_n, -i 1_n) over the 2n indices (1..n, 1bar..nbar).
Eigen::MatrixXcd complex_structure(int dim);

/// F_ij = F_i^k g_kj as a 2n x 2n skew matrix.
Eigen::MatrixXcd lower_structure(const ManifoldSpec& spec, const ComplexPoint& p);

/// The full 2n x 2n metric [[0, g], [g^T, 0]] in Yano index order.
Eigen::MatrixXcd full_metric(const Eigen::MatrixXcd& g);

void check_point(const ManifoldSpec& spec, const ComplexPoint& p);

}  // namespace wk
