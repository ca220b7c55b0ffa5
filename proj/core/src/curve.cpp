#include "wk/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wk {

namespace {

double max_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Index of the segment containing t for knots `times`, clamped to the range.
std::size_t segment_of(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t k = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  return std::min(k, times.size() - 2);
}

}  // namespace

Curve::Curve(int dim, PositionFn position, VelocityFn velocity, bool closed,
             std::optional<int> winding_hint, int chart)
    : dim_(dim),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      closed_(closed),
      winding_hint_(winding_hint),
      chart_(chart) {
  if (dim < 1) throw DimensionError("curve dimension must be >= 1");
  auto p0 = position_(0.0);
  auto p1 = position_(1.0);
  if (static_cast<int>(p0.size()) != dim || static_cast<int>(velocity_(0.0).size()) != dim) {
    throw DimensionError("curve evaluator does not return dim components");
  }
  if (closed_ && max_gap(p0, p1) > 1e-12) {
    throw DomainError("closed curve does not return to its start point");
  }
}

Curve Curve::circle(const ComplexPoint& center, double radius, int turns, int coordinate,
                    double phase) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("circle radius must be > 0");
  if (turns == 0) throw DomainError("circle needs a nonzero number of turns");
  if (coordinate < 0 || coordinate >= center.dim()) {
    throw DimensionError("circle coordinate out of range");
  }
  const std::vector<Complex> c = center.coords();
  const double omega = 2.0 * std::numbers::pi * turns;
  auto pos = [c, radius, omega, coordinate, phase](double t) {
    auto z = c;
    z[coordinate] += std::polar(radius, phase + omega * t);
    return z;
  };
  auto vel = [n = c.size(), radius, omega, coordinate, phase](double t) {
    std::vector<Complex> v(n);
    v[coordinate] = Complex(0.0, omega) * std::polar(radius, phase + omega * t);
    return v;
  };
  // Close exactly at t = 1 despite rounding in the angle.
  auto pos_exact = [pos](double t) { return t == 1.0 ? pos(0.0) : pos(t); };
  return Curve(center.dim(), pos_exact, vel, true, turns, center.chart_id());
}

Curve Curve::polyline(const std::vector<ComplexPoint>& vertices) {
  if (vertices.size() < 2) throw DomainError("polyline needs at least two vertices");
  std::vector<double> times(vertices.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    times[k] = static_cast<double>(k) / static_cast<double>(times.size() - 1);
  }
  return parametric_table(times, vertices);
}

Curve Curve::parametric_table(const std::vector<double>& times,
                              const std::vector<ComplexPoint>& points) {
  if (times.size() != points.size() || times.size() < 2) {
    throw DomainError("parametric table needs matching times and points, at least two");
  }
  if (times.front() != 0.0 || times.back() != 1.0) {
    throw DomainError("parametric table times must run from 0 to 1");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("parametric table times must increase");
  }
  const int dim = points.front().dim();
  std::vector<std::vector<Complex>> pts;
  for (const auto& p : points) {
    if (p.dim() != dim) throw DimensionError("parametric table points differ in dimension");
    pts.push_back(p.coords());
  }
  auto pos = [times, pts](double t) {
    std::size_t k = segment_of(times, t);
    double s = (t - times[k]) / (times[k + 1] - times[k]);
    std::vector<Complex> z(pts[k].size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = pts[k][i] + s * (pts[k + 1][i] - pts[k][i]);
    return z;
  };
  auto vel = [times, pts](double t) {
    std::size_t k = segment_of(times, t);
    double h = times[k + 1] - times[k];
    std::vector<Complex> v(pts[k].size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (pts[k + 1][i] - pts[k][i]) / h;
    return v;
  };
  const bool closed = max_gap(pts.front(), pts.back()) <= 1e-12;
  return Curve(dim, pos, vel, closed, std::nullopt, points.front().chart_id());
}

Curve Curve::concatenate(const Curve& a, const Curve& b) {
  if (a.dim() != b.dim()) throw DimensionError("cannot concatenate curves of different dimension");
  if (max_gap(a.position(1.0), b.position(0.0)) > 1e-12) {
    throw DomainError("concatenated curves must join end to start");
  }
  auto pos = [a, b](double t) { return t <= 0.5 ? a.position(2.0 * t) : b.position(2.0 * t - 1.0); };
  auto vel = [a, b](double t) {
    auto v = t < 0.5 ? a.velocity(2.0 * t) : b.velocity(2.0 * t - 1.0);
    for (auto& x : v) x *= 2.0;
    return v;
  };
  const bool closed = max_gap(a.position(0.0), b.position(1.0)) <= 1e-12;
  std::optional<int> hint;
  if (a.winding_hint() && b.winding_hint()) hint = *a.winding_hint() + *b.winding_hint();
  return Curve(a.dim(), pos, vel, closed, hint, a.chart());
}

Curve Curve::reversed() const {
  auto pos = [f = position_](double t) { return f(1.0 - t); };
  auto vel = [f = velocity_](double t) {
    auto v = f(1.0 - t);
    for (auto& x : v) x = -x;
    return v;
  };
  std::optional<int> hint;
  if (winding_hint_) hint = -*winding_hint_;
  return Curve(dim_, pos, vel, closed_, hint, chart_);
}

}  // namespace wk
