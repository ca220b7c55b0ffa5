#include "doctest.h"
#include "oracles.hpp"
#include "wk/connection.hpp"
#include "wk/sampling.hpp"

using namespace wk;

namespace {

ManifoldSpec flat(int n) { return {MetricField::flat(n), GaugeField::zero(n)}; }
ManifoldSpec fs(int n) { return {MetricField::fubini_study(n), GaugeField::zero(n)}; }

ManifoldSpec quartic(int n) {
  Potential k{Potential::Kind::radial_polynomial, 0.5, {0.0, 1.0, 0.25}};
  return {MetricField::from_potential(n, k), GaugeField::zero(n)};
}

std::vector<ManifoldSpec> builtin_specs(int n) {
  return {flat(n),
          fs(n),
          quartic(n),
          fs(n).with_gauge(GaugeField::exact(n, ScalarFunction::radial_log(0.7))),
          {MetricField::flat(n).with_conformal(ScalarFunction::radial_quadratic(0.3)),
           GaugeField::angular(n, 0.2, 0, Complex(1.5, 0.0))}};
}

std::vector<GaugeTransformation> gauge_family(int n) {
  std::vector<Complex> a(n, Complex(0.0));
  a[0] = Complex(1.0, 0.0);
  return {GaugeTransformation::constant(2.0), GaugeTransformation::exp_re_linear(a),
          GaugeTransformation::radial(0.5)};
}

double max_diff(const ConnectionCoefficients& x, const ConnectionCoefficients& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.pure.a.size(); ++i) {
    d = std::max(d, std::abs(x.pure.a[i] - y.pure.a[i]));
    d = std::max(d, std::abs(x.mixed.a[i] - y.mixed.a[i]));
  }
  return d;
}

double max_entry(const ConnectionCoefficients& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.pure.a.size(); ++i) {
    m = std::max({m, std::abs(x.pure.a[i]), std::abs(x.mixed.a[i])});
  }
  return m;
}

// Scalar curvature of a Kahler metric: 2 g^{mu nubar} R_{mu nubar} with
// R_{mu nubar} = -d_mu d_nubar ln det g, all by finite differences.
double kahler_scalar_fd(const ManifoldSpec& spec, const oracle::Point& z) {
  const int n = static_cast<int>(z.size());
  oracle::ScalarFn logdet = [&](const oracle::Point& w) {
    return std::log(evaluate_metric(spec, ComplexPoint(w)).determinant());
  };
  Eigen::MatrixXcd ric(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) ric(a, b) = -oracle::mixed_hessian(logdet, z, a, b, 1e-3);
  Eigen::MatrixXcd g = evaluate_metric(spec, ComplexPoint(z));
  // g^{mu nubar} is the inverse with indices swapped.
  return 2.0 * (g.inverse().transpose().cwiseProduct(ric)).sum().real();
}

}  // namespace

TEST_CASE("flat connection vanishes") {
  auto c = base_christoffel(flat(2), ComplexPoint{0.3, Complex(0.1, -0.2)});
  CHECK(max_entry(c) == 0.0);
  CHECK_FALSE(c.gauged);
  CHECK(max_entry(weyl_christoffel(flat(2), ComplexPoint{0.3, 0.1})) == 0.0);
}

TEST_CASE("Kahler metrics have no mixed block") {
  for (const auto& spec : {fs(1), fs(2), quartic(2)}) {
    for (const auto& p : polydisc_samples(spec.dim(), 10, 3)) {
      auto c = base_christoffel(spec, p);
      for (const auto& x : c.mixed.a) CHECK(std::abs(x) < 1e-10);
    }
  }
}

TEST_CASE("Fubini-Study CP1 coefficient at w = 0.5") {
  auto c = base_christoffel(fs(1), ComplexPoint{0.5});
  CHECK(std::abs(c.pure(0, 0, 0) - Complex(-0.8)) < 1e-14);

  // Independent check: g^{-1} d_w g by finite differences.
  oracle::ScalarFn g = [](const oracle::Point& w) {
    return evaluate_metric(fs(1), ComplexPoint(w))(0, 0);
  };
  const oracle::Point w{Complex(0.3, 0.4)};
  Complex fd = oracle::d_holo(g, w, 0) / g(w);
  CHECK(std::abs(base_christoffel(fs(1), ComplexPoint(w)).pure(0, 0, 0) - fd) < 1e-9);
}

TEST_CASE("base coefficients agree with finite differences of the metric") {
  // Pure block: g^{chi nubar} d_lam g_{mu nubar} for a Kahler metric.
  const ManifoldSpec spec = quartic(2);
  const oracle::Point z{Complex(0.2, 0.1), Complex(-0.3, 0.25)};
  auto c = base_christoffel(spec, ComplexPoint(z));
  Eigen::MatrixXcd ginv = evaluate_metric(spec, ComplexPoint(z)).inverse();
  for (int chi = 0; chi < 2; ++chi) {
    for (int mu = 0; mu < 2; ++mu) {
      for (int lam = 0; lam < 2; ++lam) {
        Complex expected = 0.0;
        for (int nu = 0; nu < 2; ++nu) {
          oracle::ScalarFn g = [&](const oracle::Point& w) {
            return evaluate_metric(spec, ComplexPoint(w))(mu, nu);
          };
          expected += ginv(nu, chi) * oracle::d_holo(g, z, lam);
        }
        CHECK(std::abs(c.pure(chi, mu, lam) - expected) < 1e-8);
      }
    }
  }
}

TEST_CASE("weyl corrections") {
  SUBCASE("zero gauge leaves the base connection") {
    const ComplexPoint p{Complex(0.2, 0.3), Complex(0.1, -0.4)};
    auto base = base_christoffel(fs(2), p);
    auto star = weyl_christoffel(fs(2), p);
    CHECK(star.gauged);
    CHECK(max_diff(base, star) == 0.0);
  }
  SUBCASE("constant gauge field on flat C1") {
    const Complex a(0.3, -0.2);
    // f = Re(2 a z) has d_z f = a.
    ManifoldSpec s(MetricField::flat(1), GaugeField::exact(1, ScalarFunction::re_linear({2.0 * a})));
    auto c = weyl_christoffel(s, ComplexPoint{Complex(0.4, 0.1)});
    CHECK(std::abs(c.pure(0, 0, 0) + 2.0 * a) < 1e-15);
    CHECK(std::abs(c.mixed(0, 0, 0)) < 1e-15);
  }
}

TEST_CASE("starred coefficients are gauge invariant") {
  SUBCASE("Fubini-Study CP1 under exp(Re z)") {
    ManifoldSpec s = fs(1);
    ManifoldSpec t = apply_gauge(s, GaugeTransformation::exp_re_linear({1.0}));
    for (const auto& p : polydisc_samples(1, 20, 5)) {
      CHECK(max_diff(weyl_christoffel(s, p), weyl_christoffel(t, p)) < 1e-9);
    }
  }
  SUBCASE("every built-in family and gauge") {
    for (int n : {1, 2}) {
      auto points = polydisc_samples(n, 20, 17);
      auto gauges = gauge_family(n);
      for (const auto& spec : builtin_specs(n)) {
        for (std::size_t k = 0; k < points.size(); ++k) {
          const auto& lam = gauges[k % gauges.size()];
          auto before = weyl_christoffel(spec, points[k]);
          auto after = weyl_christoffel(apply_gauge(spec, lam), points[k]);
          CHECK(max_diff(before, after) <= 1e-9 * std::max(1.0, max_entry(before)));
        }
      }
    }
  }
}

TEST_CASE("pure block is symmetric and the full connection is self-conjugate") {
  for (const auto& spec : builtin_specs(2)) {
    for (const auto& p : polydisc_samples(2, 5, 9)) {
      auto c = weyl_christoffel(spec, p);
      for (int chi = 0; chi < 2; ++chi)
        for (int mu = 0; mu < 2; ++mu)
          for (int lam = 0; lam < 2; ++lam) {
            CHECK(c.pure(chi, mu, lam) == c.pure(chi, lam, mu));
            CHECK(c.full(chi + 2, mu + 2, lam + 2) == std::conj(c.pure(chi, mu, lam)));
            CHECK(c.full(chi, mu, lam + 2) == c.mixed(chi, mu, lam));
            CHECK(c.full(chi, lam + 2, mu) == c.mixed(chi, mu, lam));
          }
    }
  }
}

TEST_CASE("Chern convention is kept for comparison only") {
  const ComplexPoint p{Complex(0.2, 0.1), Complex(-0.1, 0.3)};
  // Kahler: both conventions coincide.
  CHECK(max_diff(base_christoffel(fs(2), p, ConnectionConvention::chern), base_christoffel(fs(2), p)) <
        1e-12);
  // A non-constant gauge change breaks invariance of the Chern-based symbols.
  auto lam = GaugeTransformation::exp_re_linear({1.0, 0.0});
  auto before = weyl_christoffel(fs(2), p, ConnectionConvention::chern);
  auto after = weyl_christoffel(apply_gauge(fs(2), lam), p, ConnectionConvention::chern);
  CHECK(before.convention == ConnectionConvention::chern);
  CHECK(max_diff(before, after) > 1e-3);
}

TEST_CASE("covariant derivative of the complex structure") {
  CHECK(covariant_derivative_F(flat(2), ComplexPoint{0.1, 0.2}).max_abs() == 0.0);
  for (const auto& p : polydisc_samples(2, 10, 4)) {
    CHECK(covariant_derivative_F(fs(2), p).max_abs() < 1e-10);
    CHECK(covariant_derivative_F(quartic(2), p).max_abs() < 1e-10);
  }
  // The angular gauge produces a nonzero mixed block once n >= 2.
  ManifoldSpec c2(MetricField::flat(2), GaugeField::angular(2, 0.3));
  auto d = covariant_derivative_F(c2, ComplexPoint{1.0, 0.5});
  CHECK(d.max_abs() > 1e-3);
  // In one dimension the mixed correction cancels identically.
  ManifoldSpec c1(MetricField::flat(1), GaugeField::angular(1, 0.3));
  CHECK(covariant_derivative_F(c1, ComplexPoint{1.0}).max_abs() < 1e-15);
}

TEST_CASE("curvature of flat space vanishes") {
  auto r = curvature(flat(2), ComplexPoint{0.3, 0.2});
  for (const auto& x : r.riemann) CHECK(x == Complex(0.0));
  CHECK(r.scalar == 0.0);
}

TEST_CASE("Fubini-Study has constant positive scalar curvature") {
  for (int n : {1, 2}) {
    const double s0 = scalar_curvature(fs(n), ComplexPoint(std::vector<Complex>(n, 0.0)));
    CHECK(s0 > 0.0);
    std::vector<Complex> one(n, 0.0);
    one[0] = 1.0;
    CHECK(std::abs(scalar_curvature(fs(n), ComplexPoint(one)) - s0) < 1e-6);
    for (const auto& p : polydisc_samples(n, 20, 8)) {
      double s = scalar_curvature(fs(n), p);
      CHECK(s > 0.0);
      CHECK(std::abs(s - s0) < 1e-9);
    }
  }
}

TEST_CASE("scalar curvature matches the Kahler Ricci-form oracle") {
  for (const auto& spec : {fs(1), fs(2), quartic(1), quartic(2)}) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 4; ++k) {
      oracle::Point z = oracle::random_point(rng, spec.dim(), 0.6);
      const double s = scalar_curvature(spec, ComplexPoint(z));
      CHECK(std::abs(s - kahler_scalar_fd(spec, z)) < 1e-5 * std::max(1.0, std::abs(s)));
    }
  }
}

TEST_CASE("curvature tensor structure") {
  for (const auto& spec : builtin_specs(2)) {
    for (const auto& p : polydisc_samples(2, 3, 6)) {
      auto r = curvature(spec, p);
      CHECK(std::abs(r.scalar_imag) < 1e-9);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) CHECK(r.riemann_at(a, b, c, d) == -r.riemann_at(a, b, d, c));
    }
  }
  for (const auto& p : polydisc_samples(2, 5, 7)) {
    auto r = curvature(quartic(2), p);
    CHECK(oracle::max_abs(r.ricci - r.ricci.adjoint()) < 1e-9);
  }
}

TEST_CASE("scalar curvature field") {
  auto zero = scalar_curvature_field(flat(2));
  for (const auto& p : polydisc_samples(2, 5, 1)) CHECK(std::abs(zero(p.span())) < 1e-14);

  auto round = scalar_curvature_field(fs(1));
  const double s0 = round(std::vector<Complex>{0.0}).real();
  CHECK(s0 > 0.0);
  for (const auto& p : polydisc_samples(1, 10, 2)) {
    CHECK(std::abs(round(p.span()) - s0) < 1e-9);
    CHECK(std::abs(round(p.span()).real() - scalar_curvature(fs(1), p)) < 1e-9);
  }

  // Co-scalar of power -2 under a constant rescaling.
  for (double lam : {0.5, 2.0, 3.0}) {
    auto scaled = scalar_curvature_field(apply_gauge(quartic(2), GaugeTransformation::constant(lam)));
    auto base = scalar_curvature_field(quartic(2));
    for (const auto& p : polydisc_samples(2, 5, 3)) {
      Complex expected = cotensor_rescale(base(p.span()), kScalarCurvaturePower, lam);
      CHECK(std::abs(scaled(p.span()) - expected) < 1e-8);
    }
  }
}
