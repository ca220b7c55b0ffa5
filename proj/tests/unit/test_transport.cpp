#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "wk/transport.hpp"

using namespace wk;

namespace {

constexpr double kPi = std::numbers::pi;

ManifoldSpec flat(int n) { return {MetricField::flat(n), GaugeField::zero(n)}; }
ManifoldSpec fs(int n) { return {MetricField::fubini_study(n), GaugeField::zero(n)}; }

ManifoldSpec quartic(int n) {
  Potential k{Potential::Kind::radial_polynomial, 0.5, {0.0, 1.0, 0.25}};
  return {MetricField::from_potential(n, k), GaugeField::zero(n)};
}

ManifoldSpec conformal(int n) {
  return {MetricField::flat(n).with_conformal(ScalarFunction::radial_quadratic(0.3)),
          GaugeField::zero(n)};
}

std::vector<ManifoldSpec> metrics(int n) { return {flat(n), fs(n), quartic(n), conformal(n)}; }

std::vector<GaugeField> gauges(int n) {
  std::vector<Complex> a(n, 0.0);
  a[0] = Complex(0.4, -0.2);
  return {GaugeField::exact(n, ScalarFunction::re_linear(a)),
          GaugeField::exact(n, ScalarFunction::radial_log(0.6)),
          GaugeField::angular(n, 0.1), GaugeField::angular(n, -0.25, 0, Complex(0.1, 0.1))};
}

ComplexPoint origin(int n) { return ComplexPoint(std::vector<Complex>(n, 0.0)); }

std::vector<Curve> loops(int n) {
  std::vector<Complex> c(n, Complex(0.05, -0.1));
  const ComplexPoint center(c);
  std::vector<ComplexPoint> square;
  for (Complex v : {Complex(-0.3, -0.3), Complex(0.3, -0.3), Complex(0.3, 0.3), Complex(-0.3, 0.3),
                    Complex(-0.3, -0.3)}) {
    std::vector<Complex> p(n, Complex(0.1, 0.0));
    p[0] = v;
    square.emplace_back(p);
  }
  return {Curve::circle(origin(n), 0.5), Curve::circle(center, 0.4, 2),
          Curve::circle(center, 0.3, -1, n - 1, 0.7), Curve::polyline(square)};
}

// Sweeps skip the step-doubling re-run; convergence has its own test case.
const TransportOptions kSweep{.check_convergence = false};

Eigen::VectorXcd unit(int n, int k) { return Eigen::VectorXcd::Unit(n, k); }

double principal(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

TEST_CASE("curve velocities match finite differences of positions") {
  const std::vector<Curve> curves{
      Curve::circle(ComplexPoint{0.1, 0.2}, 0.5, 2, 1, 0.3),
      Curve::polyline({ComplexPoint{0.0}, ComplexPoint{1.0}, ComplexPoint{Complex(1.0, 1.0)}}),
      Curve::parametric_table({0.0, 0.3, 1.0}, {ComplexPoint{0.0}, ComplexPoint{Complex(0.0, 0.6)},
                                                ComplexPoint{0.2}})};
  for (const auto& c : curves) {
    for (double t : {0.1, 0.4, 0.55, 0.9}) {
      const double h = 1e-6;
      auto a = c.position(t + h);
      auto b = c.position(t - h);
      auto v = c.velocity(t);
      for (int k = 0; k < c.dim(); ++k) CHECK(std::abs((a[k] - b[k]) / (2 * h) - v[k]) < 1e-6);
    }
  }
}

TEST_CASE("curve construction") {
  auto circle = Curve::circle(ComplexPoint{Complex(0.2, 0.1)}, 0.5, 3);
  CHECK(circle.closed());
  CHECK(circle.winding_hint() == 3);
  CHECK(std::abs(circle.position(0.0)[0] - circle.position(1.0)[0]) < 1e-12);
  CHECK_THROWS_AS(Curve(
                      1, [](double t) { return std::vector<Complex>{t}; },
                      [](double) { return std::vector<Complex>{1.0}; }, true),
                  DomainError);
  auto open = Curve::polyline({ComplexPoint{0.0}, ComplexPoint{1.0}});
  CHECK_FALSE(open.closed());
  auto r = circle.reversed();
  CHECK(std::abs(r.position(0.25)[0] - circle.position(0.75)[0]) < 1e-14);
  CHECK(std::abs(r.velocity(0.25)[0] + circle.velocity(0.75)[0]) < 1e-12);
}

TEST_CASE("flat space transport is trivial") {
  const Eigen::VectorXcd v0 = (Eigen::VectorXcd(2) << Complex(1.0, 2.0), Complex(-0.5, 0.0)).finished();
  auto r = parallel_transport(flat(2), Curve::circle(origin(2), 0.7), v0, 64);
  CHECK(r.end_vector == v0);
  CHECK(r.length_factor == 1.0);
  CHECK(r.phase == 0.0);
  CHECK(r.steps == 64);

  auto open = Curve::polyline({ComplexPoint{0.0, 0.0}, ComplexPoint{Complex(0.3, 0.1), 0.2}});
  CHECK(parallel_transport(flat(2), open, v0, 32).end_vector == v0);

  auto small = loop_holonomy(flat(2), Curve::circle(ComplexPoint{0.1, 0.1}, 1e-3), 64);
  CHECK(oracle::max_abs(small.holonomy_matrix - Eigen::MatrixXcd::Identity(2, 2)) < 1e-10);
  CHECK(oracle::max_abs(small.antilinear_part) < 1e-10);
}

TEST_CASE("Fubini-Study CP1 circle keeps length and rotates by the enclosed curvature") {
  for (double radius : {0.2, 0.5, 0.8}) {
    auto c = Curve::circle(ComplexPoint{0.0}, radius);
    auto r = parallel_transport(fs(1), c, unit(1, 0), 2048);
    CHECK(std::abs(r.length_factor - 1.0) < 1e-8);
    // Closed form: exp(-oint Gamma dz) with Gamma = -2 conj(w) / (1 + |w|^2).
    const double expected = principal(4.0 * kPi * radius * radius / (1.0 + radius * radius));
    CHECK(std::abs(r.phase - expected) < 1e-8);
    CHECK(r.phase != 0.0);
    auto loop = loop_holonomy(fs(1), c, 2048);
    CHECK(std::abs(loop.length_factor - 1.0) < 1e-8);
    CHECK(loop.unitarity_residual < 1e-7);
    CHECK(std::abs(loop.phase - expected) < 1e-8);
    REQUIRE(loop.eigen_phases.size() == 1);
    CHECK(std::abs(loop.eigen_phases[0] - expected) < 1e-8);
  }
}

TEST_CASE("angular gauge length factor on flat C1") {
  for (double c : {0.1, -0.2, 0.5}) {
    ManifoldSpec s(MetricField::flat(1), GaugeField::angular(1, c));
    auto curve = Curve::circle(ComplexPoint{0.0}, 1.0);
    // Oracle: dv/dt = -2 A zdot v has v(1) = exp(2 pi c) v(0) on the unit circle.
    auto r = parallel_transport(s, curve, unit(1, 0), 2048);
    CHECK(std::abs(r.length_factor - std::exp(2 * kPi * c)) < 1e-6 * std::exp(2 * kPi * c));
    auto loop = loop_holonomy(s, curve, 2048);
    CHECK(std::abs(loop.length_factor - std::exp(2 * kPi * c)) < 1e-6 * std::exp(2 * kPi * c));
    CHECK(loop.length_factor != doctest::Approx(1.0));
    CHECK(loop.unitarity_residual < 1e-6);
  }
}

TEST_CASE("Weyl loop on CP2 has a non-unit scale and unitary remainder") {
  ManifoldSpec s(MetricField::fubini_study(2), GaugeField::angular(2, 0.3));
  auto loop = loop_holonomy(s, Curve::circle(ComplexPoint{0.0, 0.2}, 0.5), 2048);
  CHECK(std::abs(loop.length_factor - std::exp(2 * kPi * 0.3)) < 1e-6);
  CHECK(loop.unitarity_residual < 1e-6);
  CHECK(loop.eigen_phases.size() == 2);
}

TEST_CASE("gauge line integral") {
  const auto unit_circle = Curve::circle(ComplexPoint{0.0}, 1.0);
  SUBCASE("exact gauge field") {
    ManifoldSpec s(MetricField::flat(1), GaugeField::exact(1, ScalarFunction::re_linear({1.0})));
    for (const auto& c : loops(1)) CHECK(std::abs(gauge_line_integral(s, c, 1024)) < 1e-10);
  }
  SUBCASE("angular field") {
    const double c = 0.37;
    ManifoldSpec s(MetricField::flat(1), GaugeField::angular(1, c));
    Complex once = gauge_line_integral(s, unit_circle, 1024);
    CHECK(std::abs(once.real() - 2 * kPi * c) < 1e-8);
    CHECK(std::abs(once.imag()) < 1e-9);
    Complex twice = gauge_line_integral(s, Curve::circle(ComplexPoint{0.0}, 1.0, 2), 1024);
    CHECK(std::abs(twice.real() - 4 * kPi * c) < 1e-8);
    CHECK(std::abs(gauge_line_integral(s, unit_circle.reversed(), 1024).real() + 2 * kPi * c) < 1e-8);
    // A loop not enclosing the puncture.
    CHECK(std::abs(gauge_line_integral(s, Curve::circle(ComplexPoint{2.0}, 0.5), 1024)) < 1e-10);
    // A square around the puncture gives the same value.
    auto square = Curve::polyline({ComplexPoint{Complex(-1, -1)}, ComplexPoint{Complex(1, -1)},
                                   ComplexPoint{Complex(1, 1)}, ComplexPoint{Complex(-1, 1)},
                                   ComplexPoint{Complex(-1, -1)}});
    CHECK(std::abs(gauge_line_integral(s, square, 4096).real() - 2 * kPi * c) < 1e-6);
  }
  SUBCASE("curve through the puncture") {
    ManifoldSpec s(MetricField::flat(1), GaugeField::angular(1, 0.2));
    auto through = Curve::polyline({ComplexPoint{-1.0}, ComplexPoint{1.0}, ComplexPoint{-1.0}});
    CHECK_THROWS_AS(gauge_line_integral(s, through, 16), NonFiniteError);
  }
}

TEST_CASE("quantized length factor") {
  CHECK(length_holonomy_factor(0, 3.7) == 1.0);
  CHECK(std::abs(length_holonomy_factor(1, std::log(2.0)) - 2.0) < 1e-15);
  for (int a : {-3, 0, 2, 5}) {
    for (int b : {-1, 1, 4}) {
      CHECK(length_holonomy_factor(a + b, 0.3) ==
            doctest::Approx(length_holonomy_factor(a, 0.3) * length_holonomy_factor(b, 0.3))
                .epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(length_holonomy_factor(701, 1.0), OverflowError);
  CHECK_THROWS_AS(length_holonomy_factor(-2, 400.0), OverflowError);
  CHECK_NOTHROW(length_holonomy_factor(700, 1.0));

  // Choosing c so that the loop integral equals lambda ties transport to the quantum.
  for (double lambda : {0.5, 1.0, 2.0}) {
    ManifoldSpec s(MetricField::flat(1), GaugeField::angular(1, lambda / (2 * kPi)));
    auto r = parallel_transport(s, Curve::circle(ComplexPoint{0.0}, 1.0), unit(1, 0), 2048);
    CHECK(std::abs(r.length_factor - length_holonomy_factor(1, lambda)) < 1e-6);
  }
}

TEST_CASE("winding numbers") {
  const auto unit_circle = Curve::circle(ComplexPoint{0.0}, 1.0);
  CHECK(winding_number(unit_circle, ComplexPoint{0.0}) == 1);
  CHECK(winding_number(unit_circle.reversed(), ComplexPoint{0.0}) == -1);
  CHECK(winding_number(unit_circle, ComplexPoint{3.0}) == 0);
  auto twice = Curve::circle(ComplexPoint{0.0}, 1.0, 2);
  CHECK(winding_number(twice, ComplexPoint{0.0}) == 2);
  const double c = 0.2;
  ManifoldSpec s(MetricField::flat(1), GaugeField::angular(1, c));
  CHECK(std::lround(gauge_line_integral(s, twice, 1024).real() / (2 * kPi * c)) == 2);

  // Second coordinate of a C2 loop.
  auto c2 = Curve::circle(ComplexPoint{0.5, Complex(0.1, 0.1)}, 0.3, -3, 1);
  CHECK(winding_number(c2, ComplexPoint{0.0, Complex(0.1, 0.1)}, 1) == -3);

  CHECK_THROWS_AS(winding_number(unit_circle, ComplexPoint{1.0}), PunctureOnCurveError);
  CHECK_THROWS_AS(winding_number(Curve::polyline({ComplexPoint{0.0}, ComplexPoint{1.0}}),
                                 ComplexPoint{2.0}),
                  DomainError);
}

TEST_CASE("winding additivity under concatenation") {
  const double c = 0.15;
  ManifoldSpec s(MetricField::fubini_study(1), GaugeField::angular(1, c));
  auto a = Curve::circle(ComplexPoint{0.0}, 0.5);
  auto b = Curve::circle(ComplexPoint{0.0}, 0.5, 2);
  auto ab = Curve::concatenate(a, b);
  CHECK(ab.closed());
  CHECK(winding_number(ab, ComplexPoint{0.0}) ==
        winding_number(a, ComplexPoint{0.0}) + winding_number(b, ComplexPoint{0.0}));
  auto la = loop_holonomy(s, a, 1024);
  auto lb = loop_holonomy(s, b, 1024);
  auto lab = loop_holonomy(s, ab, 2048);
  CHECK(std::abs(lab.length_factor - la.length_factor * lb.length_factor) < 1e-6);
  auto back = Curve::concatenate(a, a.reversed());
  CHECK(winding_number(back, ComplexPoint{0.0}) == 0);
  CHECK(std::abs(loop_holonomy(s, back, 1024).length_factor - 1.0) < 1e-7);
}

TEST_CASE("metric-compatible transport preserves length") {
  for (int n : {1, 2}) {
    for (const auto& spec : metrics(n)) {
      for (const auto& c : loops(n)) {
        auto r = parallel_transport(spec, c, Eigen::VectorXcd::Ones(n), 2048, kSweep);
        CHECK(std::abs(r.length_factor - 1.0) < 1e-7);
        auto loop = loop_holonomy(spec, c, 2048, kSweep);
        CHECK(std::abs(loop.length_factor - 1.0) < 1e-7);
        CHECK(loop.unitarity_residual < 1e-7);
      }
    }
  }
}

TEST_CASE("Weyl length law") {
  for (int n : {1, 2}) {
    for (const auto& metric : metrics(n)) {
      for (const auto& gauge : gauges(n)) {
        ManifoldSpec spec = metric.with_gauge(gauge);
        for (const auto& c : loops(n)) {
          const double expected = std::exp(gauge_line_integral(spec, c, 2048).real());
          auto r = parallel_transport(spec, c, unit(n, n - 1), 2048, kSweep);
          CHECK(std::abs(r.length_factor - expected) < 1e-5 * expected);
          auto loop = loop_holonomy(spec, c, 2048, kSweep);
          CHECK(std::abs(loop.length_factor - expected) < 1e-5 * expected);
        }
      }
    }
  }
}

TEST_CASE("loop holonomy is gauge covariant") {
  const std::vector<GaugeTransformation> family{GaugeTransformation::constant(2.0),
                                                GaugeTransformation::exp_re_linear({1.0, 0.5}),
                                                GaugeTransformation::radial(0.5)};
  ManifoldSpec base(MetricField::fubini_study(2), GaugeField::angular(2, 0.2, 0, Complex(0.1, 0.0)));
  for (const auto& c : loops(2)) {
    auto before = loop_holonomy(base, c, 2048, kSweep);
    for (const auto& lam : family) {
      auto after = loop_holonomy(apply_gauge(base, lam), c, 2048, kSweep);
      CHECK(std::abs(after.length_factor - before.length_factor) < 1e-6 * before.length_factor);
      CHECK(oracle::max_abs(after.holonomy_matrix / after.length_factor -
                            before.holonomy_matrix / before.length_factor) < 1e-6);
      CHECK(oracle::max_abs(after.antilinear_part / after.length_factor -
                            before.antilinear_part / before.length_factor) < 1e-6);
    }
  }
}

TEST_CASE("RK4 converges at fourth order") {
  ManifoldSpec s(MetricField::fubini_study(2), GaugeField::angular(2, 0.3, 1, Complex(0.0, 0.5)));
  auto c = Curve::circle(ComplexPoint{0.1, 0.0}, 0.6, 1, 0, 0.2);
  const Eigen::VectorXcd v0 = Eigen::VectorXcd::Ones(2);
  TransportOptions quick{.check_convergence = false};
  const Eigen::VectorXcd ref = parallel_transport(s, c, v0, 4096, quick).end_vector;
  double previous = 0.0;
  for (int steps : {32, 64, 128}) {
    double err = (parallel_transport(s, c, v0, steps, quick).end_vector - ref).norm();
    if (previous > 0.0) CHECK(previous / err >= 8.0);
    previous = err;
  }
}

TEST_CASE("transport preconditions") {
  auto c1 = Curve::circle(ComplexPoint{0.0}, 0.5);
  CHECK_THROWS_AS(parallel_transport(fs(1), c1, unit(1, 0), 15), StepError);
  CHECK_THROWS_AS(parallel_transport(fs(2), c1, unit(2, 0), 64), DimensionError);
  CHECK_THROWS_AS(parallel_transport(fs(1), c1, unit(2, 0), 64), DimensionError);
  CHECK_THROWS_AS(parallel_transport(fs(1), c1, Eigen::VectorXcd::Zero(1), 64), DomainError);
  CHECK_THROWS_AS(parallel_transport(fs(1).with_chart(1), c1, unit(1, 0), 64), DomainError);
  CHECK_THROWS_AS(loop_holonomy(fs(1), Curve::polyline({ComplexPoint{0.0}, ComplexPoint{0.5}}), 64),
                  DomainError);
  SampleTable t{{{0.0}}, {Eigen::MatrixXcd::Identity(1, 1)}};
  ManifoldSpec table(MetricField::from_table(1, t), GaugeField::zero(1));
  CHECK_THROWS_AS(parallel_transport(table, c1, unit(1, 0), 64), UnsupportedFamilyError);

  // An unreachable convergence bound forces the step-doubling check to fail.
  ManifoldSpec weyl(MetricField::fubini_study(1), GaugeField::angular(1, 0.3));
  TransportOptions strict;
  strict.convergence_bound = 1e-300;
  CHECK_THROWS_AS(parallel_transport(weyl, c1, unit(1, 0), 16, strict), StepError);
}
