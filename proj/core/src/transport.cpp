#include "wk/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wk/connection.hpp"

namespace wk {

namespace {

using Frame = Eigen::MatrixXcd;  // n x K, one transported vector per column

bool finite(const Frame& m) { return m.allFinite(); }

// dV/dt for every column of V at parameter t. The velocity is read at tv,
// which differs from t only by a nudge into the current step so that
// piecewise curves use the one-sided velocity of the segment being crossed.
Frame rhs(const ManifoldSpec& spec, const Curve& c, double t, double tv, const Frame& v) {
  const int n = spec.dim();
  const auto z = c.position(t);
  const auto zd = c.velocity(tv);
  auto blocks = connection_blocks<0>(spec, std::span<const Complex>(z), true);
  for (const Complex& x : blocks.pure.a) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw NonFiniteError("connection is not finite along the curve");
    }
  }
  // Contract the derivative direction first: P(chi, mu) v^mu, etc.
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);   // P^chi_{mu lam} zd^lam
  Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(n, n);  // M^chi_{mu lam} conj(zd^lam)
  Eigen::MatrixXcd m2 = Eigen::MatrixXcd::Zero(n, n);  // M^chi_{lam mu} zd^lam
  for (int chi = 0; chi < n; ++chi) {
    for (int mu = 0; mu < n; ++mu) {
      for (int lam = 0; lam < n; ++lam) {
        p(chi, mu) += blocks.pure(chi, mu, lam) * zd[lam];
        m1(chi, mu) += blocks.mixed(chi, mu, lam) * std::conj(zd[lam]);
        m2(chi, mu) += blocks.mixed(chi, lam, mu) * zd[lam];
      }
    }
  }
  return -((p + m1) * v + m2 * v.conjugate());
}

Frame integrate(const ManifoldSpec& spec, const Curve& c, Frame v, int steps) {
  const double h = 1.0 / steps;
  const double nudge = 1e-9 * h;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const double mid = t + 0.5 * h;
    Frame k1 = rhs(spec, c, t, t + nudge, v);
    Frame k2 = rhs(spec, c, mid, mid, v + 0.5 * h * k1);
    Frame k3 = rhs(spec, c, mid, mid, v + 0.5 * h * k2);
    Frame k4 = rhs(spec, c, t + h, t + h - nudge, v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(v)) throw NonFiniteError("transported vector became non-finite");
  }
  return v;
}

double norm2(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& v) {
  // |v|^2 = sum g_{mu nubar} v^mu conj(v^nu)
  return (v.transpose() * g * v.conjugate())(0, 0).real();
}

// Real frame (e_mu, i e_mu) as columns.
Frame real_frame(int n) {
  Frame f(n, 2 * n);
  f.leftCols(n) = Eigen::MatrixXcd::Identity(n, n);
  f.rightCols(n) = Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(n, n);
  return f;
}

struct Split {
  Eigen::MatrixXcd linear;
  Eigen::MatrixXcd antilinear;
};

// Transport map v -> C v + D conj(v) from the images of the real frame.
Split split_map(const Frame& images) {
  const int n = static_cast<int>(images.rows());
  const Complex i(0.0, 1.0);
  Eigen::MatrixXcd te = images.leftCols(n);
  Eigen::MatrixXcd tie = images.rightCols(n);
  return {0.5 * (te - i * tie), 0.5 * (te + i * tie)};
}

double principal(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

void check_curve(const ManifoldSpec& spec, const Curve& c, int steps) {
  if (steps < 16) throw StepError("transport needs at least 16 steps");
  if (c.dim() != spec.dim()) throw DimensionError("curve dimension does not match manifold");
  if (c.chart() != spec.chart_id()) throw DomainError("curve lies outside the manifold chart");
  if (!spec.differentiable()) {
    throw UnsupportedFamilyError("transport needs a differentiable metric and gauge");
  }
}

struct RawTransport {
  Frame images;  // column 0: v0, then the real frame
  double length_factor;
};

RawTransport run(const ManifoldSpec& spec, const Curve& c, const Eigen::VectorXcd& v0,
                 int steps) {
  const int n = spec.dim();
  Frame start(n, 2 * n + 1);
  start.col(0) = v0;
  start.rightCols(2 * n) = real_frame(n);
  Frame end = integrate(spec, c, start, steps);
  const double l0 = norm2(evaluate_metric(spec, c.point(0.0)), v0);
  const double l1 = norm2(evaluate_metric(spec, c.point(1.0)), end.col(0));
  return {end, std::sqrt(l1 / l0)};
}

}  // namespace

TransportResult parallel_transport(const ManifoldSpec& spec, const Curve& c,
                                   const Eigen::VectorXcd& v0, int steps,
                                   const TransportOptions& options) {
  check_curve(spec, c, steps);
  const int n = spec.dim();
  if (v0.size() != n) throw DimensionError("initial vector dimension does not match manifold");
  if (!v0.allFinite() || v0.norm() == 0.0) throw DomainError("initial vector must be nonzero");

  RawTransport raw = run(spec, c, v0, steps);
  TransportResult out;
  out.steps = steps;
  out.end_vector = raw.images.col(0);
  out.length_factor = raw.length_factor;
  Split s = split_map(raw.images.rightCols(2 * n));
  out.holonomy_matrix = s.linear;
  out.antilinear_part = s.antilinear;
  out.phase = principal(std::arg(s.linear.determinant()));
  if (options.check_convergence) {
    RawTransport fine = run(spec, c, v0, 2 * steps);
    out.convergence_delta = std::abs(fine.length_factor - raw.length_factor);
    if (out.convergence_delta > options.convergence_bound) {
      throw StepError("length factor changed by " + std::to_string(out.convergence_delta) +
                      " when doubling the step count");
    }
  }
  return out;
}

TransportResult loop_holonomy(const ManifoldSpec& spec, const Curve& c, int steps,
                              const TransportOptions& options) {
  if (!c.closed()) throw DomainError("loop holonomy needs a closed curve");
  const int n = spec.dim();
  TransportResult out = parallel_transport(spec, c, Eigen::VectorXcd::Unit(n, 0), steps, options);

  // Images of the real frame, as complex columns, and the real Gram matrices.
  Frame w(n, 2 * n);
  w.leftCols(n) = out.holonomy_matrix + out.antilinear_part;
  w.rightCols(n) = Complex(0.0, 1.0) * (out.holonomy_matrix - out.antilinear_part);
  const Frame b = real_frame(n);
  const Eigen::MatrixXcd g = evaluate_metric(spec, c.point(0.0));
  Eigen::MatrixXd q = (b.transpose() * g * b.conjugate()).real();
  Eigen::MatrixXd rqr = (w.transpose() * g * w.conjugate()).real();

  Eigen::MatrixXd r(2 * n, 2 * n);
  r.topRows(n) = w.real();
  r.bottomRows(n) = w.imag();
  const double scale = std::pow(std::abs(r.determinant()), 1.0 / (2 * n));
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw NonFiniteError("loop holonomy is degenerate");
  }
  out.length_factor = scale;
  out.unitarity_residual =
      (rqr / (scale * scale) - q).cwiseAbs().maxCoeff() / q.cwiseAbs().maxCoeff();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(out.holonomy_matrix / scale, false);
  for (int k = 0; k < n; ++k) out.eigen_phases.push_back(principal(std::arg(eig.eigenvalues()(k))));
  std::sort(out.eigen_phases.begin(), out.eigen_phases.end());
  return out;
}

Complex gauge_line_integral(const ManifoldSpec& spec, const Curve& c, int steps) {
  if (steps < 2) throw StepError("line integral needs at least 2 steps");
  if (c.dim() != spec.dim()) throw DimensionError("curve dimension does not match manifold");
  if (steps % 2 != 0) ++steps;
  const double h = 1.0 / steps;
  const double nudge = 1e-9 * h;
  // A_mu zdot^mu + conj(...), with A_mubar = conj(A_mu) for the real gauge form.
  auto integrand = [&](double t, double tv) {
    Eigen::VectorXcd a = evaluate_gauge(spec, c.point(t));
    const auto zd = c.velocity(tv);
    Complex f = 0.0;
    for (int mu = 0; mu < spec.dim(); ++mu) f += a(mu) * zd[mu];
    return f + std::conj(f);
  };
  // Panel by panel, so each panel reads one-sided velocities at its ends.
  Complex sum = 0.0;
  for (int k = 0; k < steps; k += 2) {
    const double t0 = k * h;
    const double t2 = (k + 2) * h;
    sum += integrand(t0, t0 + nudge) + 4.0 * integrand(t0 + h, t0 + h) + integrand(t2, t2 - nudge);
  }
  Complex out = sum * (h / 3.0);
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
    throw NonFiniteError("gauge line integral is not finite");
  }
  return out;
}

double length_holonomy_factor(int n, double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("holonomy quantum must be finite");
  const double e = static_cast<double>(n) * lambda;
  if (std::abs(e) > 700.0) throw OverflowError("exp(n Lambda) overflows for |n Lambda| > 700");
  return std::exp(e);
}

int winding_number(const Curve& c, const ComplexPoint& puncture, int coordinate) {
  if (!c.closed()) throw DomainError("winding number needs a closed curve");
  if (coordinate < 0 || coordinate >= c.dim() || coordinate >= puncture.dim()) {
    throw DimensionError("winding coordinate out of range");
  }
  const Complex p = puncture[coordinate];
  for (int samples = 1024; samples <= (1 << 22); samples *= 2) {
    double total = 0.0;
    double worst = 0.0;
    Complex prev = c.position(0.0)[coordinate] - p;
    if (std::abs(prev) < 1e-12) throw PunctureOnCurveError("puncture lies on the curve");
    for (int k = 1; k <= samples; ++k) {
      Complex cur = c.position(static_cast<double>(k) / samples)[coordinate] - p;
      if (std::abs(cur) < 1e-12) throw PunctureOnCurveError("puncture lies on the curve");
      double step = std::arg(cur / prev);
      worst = std::max(worst, std::abs(step));
      total += step;
      prev = cur;
    }
    if (worst < std::numbers::pi / 4) {
      return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    }
  }
  throw PunctureOnCurveError("curve passes too close to the puncture to resolve its winding");
}

}  // namespace wk
