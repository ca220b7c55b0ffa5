#pragma once

// Type-erased complex scalar field on C^n that can be evaluated at every dual
// nesting level up to its own depth budget. Differential-form coefficients are
// ScalarFields, so exterior derivatives can be stacked without finite
// differences.

#include <algorithm>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <utility>

#include "wk/dual.hpp"
#include "wk/errors.hpp"

namespace wk {

template <class S>
struct level_of;
template <>
struct level_of<Complex> : std::integral_constant<int, 0> {};
template <class T>
struct level_of<Dual<T>> : std::integral_constant<int, level_of<T>::value + 1> {};
template <class S>
inline constexpr int level_of_v = level_of<S>::value;

class ScalarField {
  template <int L>
  using Fn = std::function<Sc<L>(std::span<const Sc<L>>)>;

  template <std::size_t... I>
  static auto table_type(std::index_sequence<I...>)
      -> std::tuple<Fn<static_cast<int>(I)>...>;
  using Table = decltype(table_type(std::make_index_sequence<kMaxLevel + 1>{}));

 public:
  ScalarField() = default;

  /// Wraps a generic callable `S f(std::span<const S>)`. It is instantiated
  /// for levels 0..MaxL; `depth` may further restrict the usable levels.
  template <int MaxL, class F>
  static ScalarField make(F f, int depth = MaxL) {
    static_assert(MaxL >= 0 && MaxL <= kMaxLevel);
    auto table = std::make_shared<Table>();
    fill<MaxL>(*table, f, std::make_index_sequence<MaxL + 1>{});
    ScalarField out;
    out.table_ = std::move(table);
    out.depth_ = std::min(depth, MaxL);
    return out;
  }

  static ScalarField constant(Complex c) {
    return make<kMaxLevel>([c]<class S>(std::span<const S>) { return lift<S>(c); });
  }

  template <int L>
  Sc<L> eval(std::span<const Sc<L>> z) const {
    if (!table_ || L > depth_) {
      throw DepthError("field cannot be differentiated to level " + std::to_string(L));
    }
    return std::get<L>(*table_)(z);
  }

  template <int L>
  Sc<L> eval(const std::vector<Sc<L>>& z) const {
    return eval<L>(std::span<const Sc<L>>(z));
  }

  Complex operator()(std::span<const Complex> z) const { return eval<0>(z); }

  /// Number of additional derivative levels available.
  int depth() const { return depth_; }
  bool valid() const { return static_cast<bool>(table_); }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return make<kMaxLevel>(
        [a, b]<class S>(std::span<const S> z) {
          constexpr int L = level_of_v<S>;
          return a.eval<L>(z) + b.eval<L>(z);
        },
        std::min(a.depth_, b.depth_));
  }

  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return make<kMaxLevel>(
        [a, b]<class S>(std::span<const S> z) {
          constexpr int L = level_of_v<S>;
          return a.eval<L>(z) * b.eval<L>(z);
        },
        std::min(a.depth_, b.depth_));
  }

  ScalarField scaled(Complex c) const {
    ScalarField a = *this;
    return make<kMaxLevel>(
        [a, c]<class S>(std::span<const S> z) {
          constexpr int L = level_of_v<S>;
          return a.eval<L>(z) * c;
        },
        depth_);
  }

  ScalarField conjugated() const {
    ScalarField a = *this;
    return make<kMaxLevel>(
        [a]<class S>(std::span<const S> z) {
          constexpr int L = level_of_v<S>;
          return conj(a.eval<L>(z));
        },
        depth_);
  }

  /// Wirtinger derivative d/dz^index (anti = false) or d/dzbar^index.
  ScalarField derivative(int index, bool anti) const {
    if (depth_ < 1) throw DepthError("field has no derivative levels left");
    ScalarField a = *this;
    return make<kMaxLevel>(
        [a, index, anti]<class S>(std::span<const S> z) -> S {
          constexpr int L = level_of_v<S>;
          if constexpr (L < kMaxLevel) {
            auto zx = seed<S>(z, {index, false});
            auto zy = seed<S>(z, {index, true});
            S dx = a.eval<L + 1>(std::span<const Dual<S>>(zx)).d;
            S dy = a.eval<L + 1>(std::span<const Dual<S>>(zy)).d;
            auto w = wirtinger(dx, dy);
            return anti ? w.anti : w.holo;
          } else {
            throw DepthError("derivative exceeds maximum dual level");
          }
        },
        depth_ - 1);
  }

 private:
  template <int MaxL, class F, std::size_t... I>
  static void fill(Table& t, const F& f, std::index_sequence<I...>) {
    ((std::get<I>(t) = [f](std::span<const Sc<static_cast<int>(I)>> z) {
        return f(z);
      }),
     ...);
  }

  std::shared_ptr<const Table> table_;
  int depth_ = 0;
};

}  // namespace wk
