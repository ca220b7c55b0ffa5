#include "doctest.h"
#include "oracles.hpp"
#include "wk/field.hpp"

using wk::Complex;
using wk::ScalarField;

namespace {

// f(z) = z0^2 conj(z1) + exp(z0 conj(z0)), written once for every level.
ScalarField sample_field() {
  return ScalarField::make<wk::kMaxLevel>([]<class S>(std::span<const S> z) -> S {
    return z[0] * z[0] * wk::conj(z[1]) + wk::exp(z[0] * wk::conj(z[0]));
  });
}

Complex sample_value(const oracle::Point& z) {
  return z[0] * z[0] * std::conj(z[1]) + std::exp(z[0] * std::conj(z[0]));
}

}  // namespace

TEST_CASE("dual arithmetic carries first derivatives") {
  using D = wk::Dual<Complex>;
  D x{Complex(2.0, 1.0), Complex(1.0, 0.0)};
  D y = x * x + x / D{Complex(3.0), Complex(0.0)};
  CHECK(std::abs(y.v - (x.v * x.v + x.v / 3.0)) < 1e-15);
  CHECK(std::abs(y.d - (2.0 * x.v + 1.0 / 3.0)) < 1e-15);

  D e = wk::exp(x);
  CHECK(std::abs(e.d - std::exp(x.v)) < 1e-13);
  D l = wk::log(x);
  CHECK(std::abs(l.d - 1.0 / x.v) < 1e-15);
}

TEST_CASE("Wirtinger derivatives of a field match finite differences") {
  ScalarField f = sample_field();
  const oracle::Point z{Complex(0.3, -0.2), Complex(-0.4, 0.5)};
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(f.derivative(i, false)(z) - oracle::d_holo(sample_value, z, i)) < 1e-9);
    CHECK(std::abs(f.derivative(i, true)(z) - oracle::d_anti(sample_value, z, i)) < 1e-9);
  }
}

TEST_CASE("holomorphic and antiholomorphic monomials") {
  auto zz = ScalarField::make<wk::kMaxLevel>([]<class S>(std::span<const S> z) -> S {
    return z[0] * z[0];
  });
  const std::vector<Complex> p{Complex(0.7, 0.1)};
  CHECK(std::abs(zz.derivative(0, false)(p) - 2.0 * p[0]) < 1e-14);
  CHECK(std::abs(zz.derivative(0, true)(p)) < 1e-14);
  auto mixed = zz.conjugated().derivative(0, true).derivative(0, true);
  CHECK(std::abs(mixed(p) - 2.0) < 1e-13);
}

TEST_CASE("depth budget is enforced") {
  auto f = ScalarField::make<1>([]<class S>(std::span<const S> z) -> S { return z[0]; });
  CHECK(f.depth() == 1);
  auto df = f.derivative(0, false);
  CHECK(df.depth() == 0);
  CHECK_THROWS_AS(df.derivative(0, false), wk::DepthError);
}

TEST_CASE("mixed second derivatives commute") {
  ScalarField f = sample_field();
  const std::vector<Complex> z{Complex(0.1, 0.2), Complex(0.3, -0.1)};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex ab = f.derivative(a, false).derivative(b, true)(z);
      Complex ba = f.derivative(b, true).derivative(a, false)(z);
      CHECK(std::abs(ab - ba) < 1e-12);
    }
  }
}
