#pragma once

// Small dense containers usable with any scalar level. Eigen is used for
// level-0 linear algebra; these exist so the same code paths run on duals.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "wk/dual.hpp"
#include "wk/errors.hpp"

namespace wk {

template <class S>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  S& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

/// Dense rank-3 array over n indices per slot, row-major [i][j][k].
template <class S>
struct Rank3 {
  int n = 0;
  std::vector<S> a;

  Rank3() = default;
  explicit Rank3(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim * dim) {}

  S& operator()(int i, int j, int k) {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
  const S& operator()(int i, int j, int k) const {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
};

template <class S>
Mat<S> identity_mat(int n) {
  Mat<S> m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = lift<S>(1.0);
  return m;
}

/// Gauss-Jordan inverse with partial pivoting on the base value.
template <class S>
Mat<S> inverse(Mat<S> m) {
  const int n = m.rows;
  Mat<S> inv = identity_mat<S>(n);
  double scale = 0.0;
  for (const S& x : m.a) scale = std::max(scale, std::abs(value_of(x)));
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(value_of(m(r, c))) > std::abs(value_of(m(piv, c)))) piv = r;
    }
    if (!(std::abs(value_of(m(piv, c))) > 1e-14 * scale)) {
      throw SingularMetricError("metric matrix is not invertible");
    }
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    }
    S p = lift<S>(1.0) / m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * p;
      inv(c, j) = inv(c, j) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      S f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(c, j);
        inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

inline Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
  Eigen::MatrixXcd out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

/// Strips one infinitesimal: the derivative part of every entry.
template <class S>
Mat<S> tangent(const Mat<Dual<S>>& m) {
  Mat<S> out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i].d;
  return out;
}

template <class S>
std::vector<S> tangent(const std::vector<Dual<S>>& v) {
  std::vector<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].d;
  return out;
}

template <class S>
S tangent(const Dual<S>& x) {
  return x.d;
}

inline bool all_finite(const Mat<Complex>& m) {
  for (const Complex& x : m.a) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

}  // namespace wk
