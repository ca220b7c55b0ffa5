#include "wk/manifold.hpp"

#include <cmath>
#include <limits>

#include "wk/fubini_study.hpp"

namespace wk {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

template <class S>
S radius_squared(std::span<const S> z) {
  S r2 = lift<S>(0.0);
  for (const S& x : z) r2 = r2 + abs2(x);
  return r2;
}

/// g_{mu nubar} = d_mu d_nubar K from four real second derivatives:
/// (d_x - i d_y)_mu (d_x + i d_y)_nu / 4.
template <int L>
Mat<Sc<L>> potential_hessian(const Potential& pot, std::span<const Sc<L>> z) {
  using S = Sc<L>;
  const int n = static_cast<int>(z.size());
  Mat<S> g(n, n);
  if constexpr (L + 2 <= kMaxLevel) {
    auto second = [&](Direction a, Direction b) {
      auto inner = seed<S>(z, b);
      auto outer = seed<Dual<S>>(std::span<const Dual<S>>(inner), a);
      return pot.eval<Sc<L + 2>>(std::span<const Sc<L + 2>>(outer)).d.d;
    };
    const Complex i(0.0, 1.0);
    for (int mu = 0; mu < n; ++mu) {
      for (int nu = 0; nu < n; ++nu) {
        S xx = second({mu, false}, {nu, false});
        S xy = second({mu, false}, {nu, true});
        S yx = second({mu, true}, {nu, false});
        S yy = second({mu, true}, {nu, true});
        g(mu, nu) = (xx + xy * i - yx * i + yy) * 0.25;
      }
    }
    return g;
  } else {
    throw DepthError("potential-derived metric needs two extra dual levels");
  }
}

}  // namespace

// ComplexPoint ------------------------------------------------------------------

ComplexPoint::ComplexPoint(std::vector<Complex> coords, int chart_id)
    : coords_(std::move(coords)), chart_id_(chart_id) {
  if (coords_.empty()) throw DimensionError("a point needs at least one coordinate");
  for (Complex c : coords_) {
    if (!finite(c)) throw NonFiniteError("point coordinates must be finite");
  }
}

// ScalarFunction ----------------------------------------------------------------

ScalarFunction ScalarFunction::constant(double c) {
  ScalarFunction f;
  f.kind = Kind::constant;
  f.value = c;
  return f;
}

ScalarFunction ScalarFunction::re_linear(std::vector<Complex> a, double offset) {
  ScalarFunction f;
  f.kind = Kind::re_linear;
  f.coefficients = std::move(a);
  f.value = offset;
  return f;
}

ScalarFunction ScalarFunction::radial_log(double alpha) {
  ScalarFunction f;
  f.kind = Kind::radial_log;
  f.alpha = alpha;
  return f;
}

ScalarFunction ScalarFunction::radial_quadratic(double alpha) {
  ScalarFunction f;
  f.kind = Kind::radial_quadratic;
  f.alpha = alpha;
  return f;
}

template <class S>
S ScalarFunction::eval(std::span<const S> z) const {
  switch (kind) {
    case Kind::constant:
      return lift<S>(value);
    case Kind::re_linear: {
      S s = lift<S>(0.0);
      const std::size_t m = std::min(coefficients.size(), z.size());
      for (std::size_t mu = 0; mu < m; ++mu) s = s + z[mu] * coefficients[mu];
      return re(s) + value;
    }
    case Kind::radial_log:
      return log(radius_squared(z) * alpha + 1.0);
    case Kind::radial_quadratic:
      return radius_squared(z) * alpha;
  }
  return lift<S>(0.0);
}

template <class S>
std::vector<S> ScalarFunction::gradient(std::span<const S> z) const {
  std::vector<S> g(z.size(), lift<S>(0.0));
  switch (kind) {
    case Kind::constant:
      break;
    case Kind::re_linear:
      for (std::size_t mu = 0; mu < z.size() && mu < coefficients.size(); ++mu) {
        g[mu] = lift<S>(coefficients[mu] * 0.5);
      }
      break;
    case Kind::radial_log: {
      S den = radius_squared(z) * alpha + 1.0;
      for (std::size_t mu = 0; mu < z.size(); ++mu) g[mu] = conj(z[mu]) * alpha / den;
      break;
    }
    case Kind::radial_quadratic:
      for (std::size_t mu = 0; mu < z.size(); ++mu) g[mu] = conj(z[mu]) * alpha;
      break;
  }
  return g;
}

// Potential ---------------------------------------------------------------------

template <class S>
S Potential::eval(std::span<const S> z) const {
  S r2 = radius_squared(z);
  switch (kind) {
    case Kind::fubini_study:
      return log(r2 + 1.0) * scale;
    case Kind::radial_polynomial: {
      // Horner in r^2.
      S acc = lift<S>(0.0);
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * r2 + *it;
      }
      return acc;
    }
  }
  return lift<S>(0.0);
}

// SampleTable -------------------------------------------------------------------

std::size_t SampleTable::nearest(std::span<const Complex> z) const {
  if (points.empty()) throw DomainError("empty sample table");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    double d = 0.0;
    for (std::size_t j = 0; j < z.size() && j < points[k].size(); ++j) {
      d += std::norm(z[j] - points[k][j]);
    }
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

// Families ------------------------------------------------------------------------

std::string to_string(MetricFamily f) {
  switch (f) {
    case MetricFamily::flat: return "flat";
    case MetricFamily::fubini_study: return "fubini_study";
    case MetricFamily::potential_derived: return "potential_derived";
    case MetricFamily::table_driven: return "table_driven";
  }
  return "?";
}

std::string to_string(GaugeFamily f) {
  switch (f) {
    case GaugeFamily::zero: return "zero";
    case GaugeFamily::exact: return "exact";
    case GaugeFamily::angular: return "angular";
    case GaugeFamily::table_driven: return "table_driven";
  }
  return "?";
}

static void require_dim(int dim) {
  if (dim < 1) throw DimensionError("manifold dimension must be >= 1");
}

MetricField MetricField::flat(int dim) {
  require_dim(dim);
  MetricField m;
  m.dim_ = dim;
  m.family_ = MetricFamily::flat;
  return m;
}

MetricField MetricField::fubini_study(int dim) {
  MetricField m = flat(dim);
  m.family_ = MetricFamily::fubini_study;
  return m;
}

MetricField MetricField::from_potential(int dim, Potential potential) {
  MetricField m = flat(dim);
  m.family_ = MetricFamily::potential_derived;
  m.potential_ = std::move(potential);
  return m;
}

MetricField MetricField::from_table(int dim, SampleTable table) {
  MetricField m = flat(dim);
  m.family_ = MetricFamily::table_driven;
  for (const auto& v : table.values) {
    if (v.rows() != dim || v.cols() != dim) {
      throw DimensionError("metric table entries must be dim x dim");
    }
    if ((v - v.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw NonHermitianError("metric table entry is not Hermitian");
    }
    if (Eigen::LLT<Eigen::MatrixXcd>(v).info() != Eigen::Success) {
      throw DomainError("metric table entry is not positive-definite");
    }
  }
  m.table_ = std::make_shared<const SampleTable>(std::move(table));
  return m;
}

MetricField MetricField::with_conformal(ScalarFunction f) const {
  MetricField m = *this;
  m.conformal_ = std::move(f);
  return m;
}

GaugeField GaugeField::zero(int dim) {
  require_dim(dim);
  GaugeField g;
  g.dim_ = dim;
  return g;
}

GaugeField GaugeField::exact(int dim, ScalarFunction f) {
  GaugeField g = zero(dim);
  g.family_ = GaugeFamily::exact;
  g.potential_ = std::move(f);
  return g;
}

GaugeField GaugeField::angular(int dim, double c, int coordinate, Complex puncture) {
  GaugeField g = zero(dim);
  if (coordinate < 0 || coordinate >= dim) {
    throw DimensionError("angular gauge coordinate out of range");
  }
  g.family_ = GaugeFamily::angular;
  g.c_ = c;
  g.coordinate_ = coordinate;
  g.puncture_ = puncture;
  return g;
}

GaugeField GaugeField::from_table(int dim, SampleTable table) {
  GaugeField g = zero(dim);
  g.family_ = GaugeFamily::table_driven;
  for (const auto& v : table.values) {
    if (v.size() != dim) throw DimensionError("gauge table entries need dim components");
  }
  g.table_ = std::make_shared<const SampleTable>(std::move(table));
  return g;
}

// GaugeTransformation -----------------------------------------------------------------

GaugeTransformation GaugeTransformation::from_log(ScalarFunction log_lambda) {
  GaugeTransformation t;
  t.log_factors_.push_back(std::move(log_lambda));
  return t;
}

GaugeTransformation GaugeTransformation::constant(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("gauge factor lambda must be positive");
  return from_log(ScalarFunction::constant(std::log(lambda)));
}

GaugeTransformation GaugeTransformation::exp_re_linear(std::vector<Complex> a) {
  return from_log(ScalarFunction::re_linear(std::move(a)));
}

GaugeTransformation GaugeTransformation::radial(double alpha) {
  if (alpha < 0.0) throw DomainError("radial gauge factor needs alpha >= 0");
  return from_log(ScalarFunction::radial_log(alpha));
}

GaugeTransformation GaugeTransformation::compose(const GaugeTransformation& a,
                                                 const GaugeTransformation& b) {
  GaugeTransformation t = a;
  t.log_factors_.insert(t.log_factors_.end(), b.log_factors_.begin(), b.log_factors_.end());
  return t;
}

double GaugeTransformation::lambda(const ComplexPoint& p) const {
  double s = 0.0;
  for (const auto& f : log_factors_) s += f.eval<Complex>(p.span()).real();
  return std::exp(s);
}

Eigen::VectorXcd GaugeTransformation::log_gradient(const ComplexPoint& p) const {
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(p.dim());
  for (const auto& f : log_factors_) {
    auto d = f.gradient<Complex>(p.span());
    for (int mu = 0; mu < p.dim(); ++mu) g(mu) += d[mu];
  }
  return g;
}

// ManifoldSpec -------------------------------------------------------------------------

ManifoldSpec::ManifoldSpec(MetricField metric, GaugeField gauge)
    : metric_(std::move(metric)), gauge_(std::move(gauge)) {
  if (metric_.dim() != gauge_.dim()) {
    throw DimensionError("metric and gauge field dimensions differ");
  }
}

ManifoldSpec ManifoldSpec::with_chart(int chart) const {
  ManifoldSpec s = *this;
  s.chart_id_ = chart;
  return s;
}

ManifoldSpec ManifoldSpec::with_gauge(GaugeField gauge) const {
  if (gauge.dim() != dim()) throw DimensionError("gauge field dimension differs");
  ManifoldSpec s = *this;
  s.gauge_ = std::move(gauge);
  return s;
}

bool ManifoldSpec::differentiable() const {
  return metric_.family() != MetricFamily::table_driven &&
         gauge_.family() != GaugeFamily::table_driven;
}

ManifoldSpec apply_gauge(const ManifoldSpec& spec, const GaugeTransformation& t) {
  ManifoldSpec out = spec;
  out.weyl_factors_.insert(out.weyl_factors_.end(), t.log_factors().begin(),
                           t.log_factors().end());
  return out;
}

// Level-generic evaluation --------------------------------------------------------------

template <int L>
Mat<Sc<L>> metric_matrix(const ManifoldSpec& spec, std::span<const Sc<L>> z) {
  using S = Sc<L>;
  const int n = spec.dim();
  if (static_cast<int>(z.size()) != n) throw DimensionError("point dimension mismatch");
  const MetricField& m = spec.metric();
  Mat<S> g;
  switch (m.family()) {
    case MetricFamily::flat:
      g = identity_mat<S>(n);
      break;
    case MetricFamily::fubini_study:
      g = fubini_study_matrix<S>(z);
      break;
    case MetricFamily::potential_derived:
      g = potential_hessian<L>(m.potential(), z);
      break;
    case MetricFamily::table_driven:
      if constexpr (L == 0) {
        const auto& v = m.table()->values[m.table()->nearest(z)];
        g = Mat<S>(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) g(i, j) = v(i, j);
        break;
      } else {
        throw UnsupportedFamilyError("table_driven metrics have no derivatives");
      }
  }
  bool scaled = m.conformal().has_value() || !spec.weyl_factors().empty();
  if (scaled) {
    S log_scale = lift<S>(0.0);
    if (m.conformal()) log_scale = log_scale + m.conformal()->eval<S>(z);
    for (const auto& f : spec.weyl_factors()) log_scale = log_scale + f.eval<S>(z);
    S factor = exp(log_scale * 2.0);
    for (S& x : g.a) x = x * factor;
  }
  return g;
}

template <int L>
std::vector<Sc<L>> gauge_components(const ManifoldSpec& spec, std::span<const Sc<L>> z) {
  using S = Sc<L>;
  const int n = spec.dim();
  if (static_cast<int>(z.size()) != n) throw DimensionError("point dimension mismatch");
  const GaugeField& a = spec.gauge();
  std::vector<S> out(n, lift<S>(0.0));
  switch (a.family()) {
    case GaugeFamily::zero:
      break;
    case GaugeFamily::exact:
      out = a.potential().gradient<S>(z);
      break;
    case GaugeFamily::angular: {
      const int k = a.coordinate();
      out[k] = lift<S>(Complex(0.0, -0.5 * a.winding_strength())) / (z[k] - a.puncture());
      break;
    }
    case GaugeFamily::table_driven:
      if constexpr (L == 0) {
        const auto& v = a.table()->values[a.table()->nearest(z)];
        for (int mu = 0; mu < n; ++mu) out[mu] = v(mu);
        break;
      } else {
        throw UnsupportedFamilyError("table_driven gauge fields have no derivatives");
      }
  }
  for (const auto& f : spec.weyl_factors()) {
    auto d = f.gradient<S>(z);
    for (int mu = 0; mu < n; ++mu) out[mu] = out[mu] + d[mu];
  }
  return out;
}

#define WK_INSTANTIATE(L)                                                                   \
  template Sc<L> ScalarFunction::eval<Sc<L>>(std::span<const Sc<L>>) const;                 \
  template std::vector<Sc<L>> ScalarFunction::gradient<Sc<L>>(std::span<const Sc<L>>) const; \
  template Sc<L> Potential::eval<Sc<L>>(std::span<const Sc<L>>) const;                      \
  template Mat<Sc<L>> metric_matrix<L>(const ManifoldSpec&, std::span<const Sc<L>>);        \
  template std::vector<Sc<L>> gauge_components<L>(const ManifoldSpec&, std::span<const Sc<L>>);

WK_INSTANTIATE(0)
WK_INSTANTIATE(1)
WK_INSTANTIATE(2)
WK_INSTANTIATE(3)
WK_INSTANTIATE(4)
WK_INSTANTIATE(5)
#undef WK_INSTANTIATE

// Level-0 operations ---------------------------------------------------------------------

void check_point(const ManifoldSpec& spec, const ComplexPoint& p) {
  if (p.dim() != spec.dim()) throw DimensionError("point dimension does not match manifold");
  if (p.chart_id() != spec.chart_id()) {
    throw DomainError("point chart " + std::to_string(p.chart_id()) +
                      " is outside the manifold chart " + std::to_string(spec.chart_id()));
  }
}

Eigen::MatrixXcd evaluate_metric(const ManifoldSpec& spec, const ComplexPoint& p) {
  check_point(spec, p);
  Mat<Complex> g = metric_matrix<0>(spec, p.span());
  if (!all_finite(g)) throw NonFiniteError("metric is not finite at the point");
  Eigen::MatrixXcd out = to_eigen(g);
  if (Eigen::LLT<Eigen::MatrixXcd>(out).info() != Eigen::Success) {
    throw DomainError("metric is not positive-definite at the point");
  }
  return out;
}

Eigen::VectorXcd evaluate_gauge(const ManifoldSpec& spec, const ComplexPoint& p) {
  check_point(spec, p);
  auto a = gauge_components<0>(spec, p.span());
  Eigen::VectorXcd out(spec.dim());
  for (int mu = 0; mu < spec.dim(); ++mu) {
    if (!finite(a[mu])) throw NonFiniteError("gauge field is not finite at the point");
    out(mu) = a[mu];
  }
  return out;
}

namespace {

Eigen::MatrixXcd metric_at(const ManifoldSpec& spec, std::vector<Complex> z) {
  return to_eigen(metric_matrix<0>(spec, std::span<const Complex>(z)));
}

/// Five-point central difference along one real direction.
Eigen::MatrixXcd fd_first(const ManifoldSpec& spec, const std::vector<Complex>& z, Direction d,
                          double h) {
  auto shifted = [&](double s) {
    std::vector<Complex> w = z;
    w[d.index] += d.imaginary ? Complex(0.0, s) : Complex(s, 0.0);
    return metric_at(spec, w);
  };
  return (-shifted(2 * h) + 8.0 * shifted(h) - 8.0 * shifted(-h) + shifted(-2 * h)) / (12.0 * h);
}

Eigen::MatrixXcd fd_second(const ManifoldSpec& spec, const std::vector<Complex>& z, Direction a,
                           Direction b, double h) {
  static constexpr double kWeights[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  static constexpr double kOffsets[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const int n = spec.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < 5; ++i) {
    if (kWeights[i] == 0.0) continue;
    for (int j = 0; j < 5; ++j) {
      if (kWeights[j] == 0.0) continue;
      std::vector<Complex> w = z;
      w[a.index] += a.imaginary ? Complex(0.0, kOffsets[i] * h) : Complex(kOffsets[i] * h, 0.0);
      w[b.index] += b.imaginary ? Complex(0.0, kOffsets[j] * h) : Complex(kOffsets[j] * h, 0.0);
      acc += kWeights[i] * kWeights[j] * metric_at(spec, w);
    }
  }
  return acc / (144.0 * h * h);
}

void compare(const Eigen::MatrixXcd& ad, const Eigen::MatrixXcd& fd, double scale, double tol,
             const char* what) {
  double err = (ad - fd).cwiseAbs().maxCoeff() / std::max(1.0, scale);
  if (err > tol) {
    throw ToleranceError(std::string(what) + " AD/finite-difference mismatch " +
                         std::to_string(err));
  }
}

}  // namespace

JetValue metric_jet(const ManifoldSpec& spec, const ComplexPoint& p, int order,
                    const JetOptions& options) {
  if (order != 1 && order != 2) throw DomainError("jet order must be 1 or 2");
  JetValue jet;
  jet.value = evaluate_metric(spec, p);
  const int n = spec.dim();
  const auto z = p.span();
  for (int mu = 0; mu < n; ++mu) {
    auto zx = seed<Complex>(z, {mu, false});
    auto zy = seed<Complex>(z, {mu, true});
    auto dx = tangent(metric_matrix<1>(spec, std::span<const Sc<1>>(zx)));
    auto dy = tangent(metric_matrix<1>(spec, std::span<const Sc<1>>(zy)));
    Eigen::MatrixXcd ex = to_eigen(dx), ey = to_eigen(dy);
    jet.d_holo.push_back(0.5 * (ex - Complex(0, 1) * ey));
    jet.d_anti.push_back(0.5 * (ex + Complex(0, 1) * ey));
    if (options.cross_check) {
      std::vector<Complex> zv(z.begin(), z.end());
      double scale = std::max(ex.cwiseAbs().maxCoeff(), ey.cwiseAbs().maxCoeff());
      compare(ex, fd_first(spec, zv, {mu, false}, options.fd_step), scale, options.tolerance,
              "first derivative");
      compare(ey, fd_first(spec, zv, {mu, true}, options.fd_step), scale, options.tolerance,
              "first derivative");
    }
  }
  if (order == 2) {
    jet.second.assign(n, std::vector<Eigen::MatrixXcd>(n));
    auto real_second = [&](Direction a, Direction b) {
      auto inner = seed<Complex>(z, b);
      auto outer = seed<Sc<1>>(std::span<const Sc<1>>(inner), a);
      auto g2 = metric_matrix<2>(spec, std::span<const Sc<2>>(outer));
      Eigen::MatrixXcd out(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = g2(i, j).d.d;
      return out;
    };
    const Complex i(0.0, 1.0);
    std::vector<Complex> zv(z.begin(), z.end());
    for (int mu = 0; mu < n; ++mu) {
      for (int nu = 0; nu < n; ++nu) {
        Direction xm{mu, false}, ym{mu, true}, xn{nu, false}, yn{nu, true};
        Eigen::MatrixXcd xx = real_second(xm, xn), xy = real_second(xm, yn),
                         yx = real_second(ym, xn), yy = real_second(ym, yn);
        jet.second[mu][nu] = 0.25 * (xx + i * xy - i * yx + yy);
        if (options.cross_check) {
          double scale = std::max({xx.cwiseAbs().maxCoeff(), xy.cwiseAbs().maxCoeff(),
                                   yx.cwiseAbs().maxCoeff(), yy.cwiseAbs().maxCoeff()});
          const double h = options.fd_step_second;
          compare(xx, fd_second(spec, zv, xm, xn, h), scale, options.tolerance, "second derivative");
          compare(xy, fd_second(spec, zv, xm, yn, h), scale, options.tolerance, "second derivative");
          compare(yx, fd_second(spec, zv, ym, xn, h), scale, options.tolerance, "second derivative");
          compare(yy, fd_second(spec, zv, ym, yn, h), scale, options.tolerance, "second derivative");
        }
      }
    }
  }
  return jet;
}

Eigen::MatrixXcd complex_structure(int dim) {
  require_dim(dim);
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  for (int mu = 0; mu < dim; ++mu) {
    f(mu, mu) = Complex(0.0, 1.0);
    f(dim + mu, dim + mu) = Complex(0.0, -1.0);
  }
  return f;
}

Eigen::MatrixXcd full_metric(const Eigen::MatrixXcd& g) {
  const auto n = g.rows();
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  full.topRightCorner(n, n) = g;
  full.bottomLeftCorner(n, n) = g.transpose();
  return full;
}

Eigen::MatrixXcd lower_structure(const ManifoldSpec& spec, const ComplexPoint& p) {
  return complex_structure(spec.dim()) * full_metric(evaluate_metric(spec, p));
}

}  // namespace wk
