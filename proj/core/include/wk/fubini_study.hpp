#pragma once

// Closed-form Fubini-Study geometry in the inhomogeneous chart w^i = Z^i/Z^0,
// generated by the potential K = 1/2 ln(1 + sum |w^i|^2).

#include <span>

#include "wk/dual.hpp"
#include "wk/tensor.hpp"

namespace wk {

template <class S>
S fubini_study_potential(std::span<const S> w) {
  S r2 = lift<S>(0.0);
  for (const S& x : w) r2 = r2 + abs2(x);
  return log(r2 + 1.0) * 0.5;
}

/// g_{mu nubar} = d_mu d_nubar K
///             = [ (1 + |w|^2) delta_{mu nu} - conj(w^mu) w^nu ] / (2 (1 + |w|^2)^2).
template <class S>
Mat<S> fubini_study_matrix(std::span<const S> w) {
  const int n = static_cast<int>(w.size());
  S r2 = lift<S>(0.0);
  for (const S& x : w) r2 = r2 + abs2(x);
  S den = r2 + 1.0;
  S inv = lift<S>(0.5) / (den * den);
  Mat<S> g(n, n);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      S e = -(conj(w[mu]) * w[nu]);
      if (mu == nu) e = e + den;
      g(mu, nu) = e * inv;
    }
  }
  return g;
}

}  // namespace wk
