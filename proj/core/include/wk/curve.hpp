#pragma once

// Parameterized curves t in [0, 1] -> C^n with analytic velocity.

#include <functional>
#include <optional>
#include <vector>

#include "wk/manifold.hpp"

namespace wk {

class Curve {
 public:
  using PositionFn = std::function<std::vector<Complex>(double)>;
  using VelocityFn = std::function<std::vector<Complex>(double)>;

  /// Throws DomainError if `closed` and the endpoints differ by more than 1e-12.
  Curve(int dim, PositionFn position, VelocityFn velocity, bool closed,
        std::optional<int> winding_hint = std::nullopt, int chart = 0);

  /// z^coordinate = center + radius * exp(i (phase + 2 pi turns t)); other
  /// coordinates stay at the center's. Negative turns run clockwise.
  static Curve circle(const ComplexPoint& center, double radius, int turns = 1,
                      int coordinate = 0, double phase = 0.0);
  /// Straight segments with equal parameter time each. Closed when the last
  /// vertex equals the first.
  static Curve polyline(const std::vector<ComplexPoint>& vertices);
  /// Linear interpolation through (times, points); times strictly increasing
  /// from 0 to 1.
  static Curve parametric_table(const std::vector<double>& times,
                                const std::vector<ComplexPoint>& points);
  /// a on [0, 1/2], b on [1/2, 1]; a must end where b starts.
  static Curve concatenate(const Curve& a, const Curve& b);
  Curve reversed() const;

  int dim() const { return dim_; }
  int chart() const { return chart_; }
  bool closed() const { return closed_; }
  std::optional<int> winding_hint() const { return winding_hint_; }

  ComplexPoint point(double t) const { return ComplexPoint(position_(t), chart_); }
  std::vector<Complex> position(double t) const { return position_(t); }
  std::vector<Complex> velocity(double t) const { return velocity_(t); }

 private:
  int dim_;
  PositionFn position_;
  VelocityFn velocity_;
  bool closed_;
  std::optional<int> winding_hint_;
  int chart_;
};

}  // namespace wk
