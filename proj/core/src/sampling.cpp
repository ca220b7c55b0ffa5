#include "wk/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace wk {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<ComplexPoint> polydisc_samples(int dim, int count, std::uint64_t seed,
                                           const PolydiscSampling& opts) {
  if (dim < 1) throw DimensionError("sampling needs dim >= 1");
  if (2 * dim > static_cast<int>(std::size(kPrimes))) {
    throw DimensionError("sampling supports at most 8 complex dimensions");
  }
  if (!(opts.r_min >= 0.0 && opts.r_max > opts.r_min)) {
    throw DomainError("sampling radii must satisfy 0 <= r_min < r_max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(2 * dim);
  for (double& s : shift) s = unit(rng);

  const double a2 = opts.r_min * opts.r_min;
  const double b2 = opts.r_max * opts.r_max;
  std::vector<ComplexPoint> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::vector<Complex> z(dim);
    for (int mu = 0; mu < dim; ++mu) {
      double u = std::fmod(radical_inverse(k + 1, kPrimes[2 * mu]) + shift[2 * mu], 1.0);
      double v = std::fmod(radical_inverse(k + 1, kPrimes[2 * mu + 1]) + shift[2 * mu + 1], 1.0);
      double r = std::sqrt(a2 + u * (b2 - a2));
      z[mu] = std::polar(r, 2.0 * std::numbers::pi * v);
    }
    out.emplace_back(std::move(z), opts.chart);
  }
  return out;
}

}  // namespace wk
