#pragma once

// Forward-mode dual numbers over std::complex<double>, nestable to any depth.
//
// Seeds are always real directions (x^a or y^a of z^a = x^a + i y^a), so
// conjugation commutes with differentiation:  conj(f)' = conj(f').
// Wirtinger derivatives are recovered from two real seeds:
//   d/dz = (d/dx - i d/dy) / 2,   d/dzbar = (d/dx + i d/dy) / 2.

#include <cmath>
#include <complex>
#include <span>
#include <type_traits>
#include <vector>

namespace wk {

using Complex = std::complex<double>;

template <class T>
struct Dual {
  T v{};
  T d{};
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

template <class T>
concept Constant = std::is_same_v<T, Complex> || std::is_same_v<T, double>;

namespace detail {
template <int L>
struct ScalarAt {
  using type = Dual<typename ScalarAt<L - 1>::type>;
};
template <>
struct ScalarAt<0> {
  using type = Complex;
};
}  // namespace detail

/// Scalar type carrying L nested infinitesimals.
template <int L>
using Sc = typename detail::ScalarAt<L>::type;

/// Deepest nesting level any type-erased field is instantiated for.
inline constexpr int kMaxLevel = 5;

// ---------------------------------------------------------------------------

template <class S>
constexpr S lift(Complex c) {
  if constexpr (std::is_same_v<S, Complex>) {
    return c;
  } else {
    return S{lift<decltype(S{}.v)>(c), {}};
  }
}

inline constexpr Complex value_of(Complex x) { return x; }
template <class T>
constexpr Complex value_of(const Dual<T>& x) {
  return value_of(x.v);
}

// Arithmetic ----------------------------------------------------------------

template <class T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.v + b.v, a.d + b.d};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.v - b.v, a.d - b.d};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.v, -a.d};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T inv = T(lift<T>(1.0)) / b.v;
  T q = a.v * inv;
  return {q, (a.d - q * b.d) * inv};
}

template <class T, Constant K>
constexpr Dual<T> operator+(const Dual<T>& a, K c) {
  return {a.v + c, a.d};
}
template <class T, Constant K>
constexpr Dual<T> operator+(K c, const Dual<T>& a) {
  return {c + a.v, a.d};
}
template <class T, Constant K>
constexpr Dual<T> operator-(const Dual<T>& a, K c) {
  return {a.v - c, a.d};
}
template <class T, Constant K>
constexpr Dual<T> operator-(K c, const Dual<T>& a) {
  return {c - a.v, -a.d};
}
template <class T, Constant K>
constexpr Dual<T> operator*(const Dual<T>& a, K c) {
  return {a.v * c, a.d * c};
}
template <class T, Constant K>
constexpr Dual<T> operator*(K c, const Dual<T>& a) {
  return {c * a.v, c * a.d};
}
template <class T, Constant K>
constexpr Dual<T> operator/(const Dual<T>& a, K c) {
  return {a.v / c, a.d / c};
}
template <class T, Constant K>
constexpr Dual<T> operator/(K c, const Dual<T>& a) {
  return Dual<T>{lift<T>(Complex(c)), T{}} / a;
}

template <class T, class U>
constexpr Dual<T>& operator+=(Dual<T>& a, const U& b) {
  return a = a + b;
}
template <class T, class U>
constexpr Dual<T>& operator-=(Dual<T>& a, const U& b) {
  return a = a - b;
}
template <class T, class U>
constexpr Dual<T>& operator*=(Dual<T>& a, const U& b) {
  return a = a * b;
}
template <class T, class U>
constexpr Dual<T>& operator/=(Dual<T>& a, const U& b) {
  return a = a / b;
}

// Elementary functions --------------------------------------------------------
//
// Overloads for Complex live in this namespace so generic code can call them
// unqualified for every level.

inline Complex conj(Complex x) { return std::conj(x); }
inline Complex exp(Complex x) { return std::exp(x); }
inline Complex log(Complex x) { return std::log(x); }
inline Complex sqrt(Complex x) { return std::sqrt(x); }
inline Complex sin(Complex x) { return std::sin(x); }
inline Complex cos(Complex x) { return std::cos(x); }
inline Complex re(Complex x) { return {x.real(), 0.0}; }
inline Complex im(Complex x) { return {x.imag(), 0.0}; }
inline Complex pow(Complex x, double p) { return std::pow(x, p); }

template <class T>
Dual<T> conj(const Dual<T>& a) {
  return {conj(a.v), conj(a.d)};
}
template <class T>
Dual<T> re(const Dual<T>& a) {
  return {re(a.v), re(a.d)};
}
template <class T>
Dual<T> im(const Dual<T>& a) {
  return {im(a.v), im(a.d)};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
  T e = exp(a.v);
  return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  return {log(a.v), a.d / a.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  T s = sqrt(a.v);
  return {s, a.d / (s * 2.0)};
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
  return {sin(a.v), a.d * cos(a.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  return {cos(a.v), -(a.d * sin(a.v))};
}
template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
  return {pow(a.v, p), a.d * (pow(a.v, p - 1.0) * p)};
}

/// |x|^2 as a (real-valued) scalar of the same level.
template <class S>
S abs2(const S& x) {
  return re(x * conj(x));
}

// Seeding -----------------------------------------------------------------------

/// Real direction of differentiation: coordinate index and x/y component.
struct Direction {
  int index = 0;
  bool imaginary = false;
};

/// Lifts a point from level L to L+1, seeding one real direction.
template <class S>
std::vector<Dual<S>> seed(std::span<const S> z, Direction dir) {
  std::vector<Dual<S>> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    out[j].v = z[j];
    if (static_cast<int>(j) == dir.index) {
      out[j].d = lift<S>(dir.imaginary ? Complex(0.0, 1.0) : Complex(1.0, 0.0));
    }
  }
  return out;
}

/// Lifts a point from level 0 to level L with no seeded direction.
template <int L>
std::vector<Sc<L>> lift_point(std::span<const Complex> z) {
  std::vector<Sc<L>> out;
  out.reserve(z.size());
  for (Complex c : z) out.push_back(lift<Sc<L>>(c));
  return out;
}

/// Wirtinger pair (d/dz, d/dzbar) from x- and y-directional derivatives.
template <class S>
struct Wirtinger {
  S holo;
  S anti;
};

template <class S>
Wirtinger<S> wirtinger(const S& dx, const S& dy) {
  const Complex half(0.5, 0.0);
  const Complex ihalf(0.0, 0.5);
  return {dx * half - dy * ihalf, dx * half + dy * ihalf};
}

}  // namespace wk
