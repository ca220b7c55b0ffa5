#include "wk/connection.hpp"

#include <cmath>

namespace wk {

namespace {

template <int L>
struct MetricDerivs {
  Mat<Sc<L>> g;
  std::vector<Mat<Sc<L>>> holo;  // d_a g
  std::vector<Mat<Sc<L>>> anti;  // d_abar g
};

template <int L>
MetricDerivs<L> metric_derivs(const ManifoldSpec& spec, std::span<const Sc<L>> z) {
  using S = Sc<L>;
  MetricDerivs<L> out;
  out.g = metric_matrix<L>(spec, z);
  const int n = spec.dim();
  for (int a = 0; a < n; ++a) {
    auto zx = seed<S>(z, {a, false});
    auto zy = seed<S>(z, {a, true});
    Mat<S> dx = tangent(metric_matrix<L + 1>(spec, std::span<const Sc<L + 1>>(zx)));
    Mat<S> dy = tangent(metric_matrix<L + 1>(spec, std::span<const Sc<L + 1>>(zy)));
    Mat<S> h(n, n), b(n, n);
    for (std::size_t k = 0; k < dx.a.size(); ++k) {
      auto w = wirtinger(dx.a[k], dy.a[k]);
      h.a[k] = w.holo;
      b.a[k] = w.anti;
    }
    out.holo.push_back(std::move(h));
    out.anti.push_back(std::move(b));
  }
  return out;
}

template <int L>
ConnectionBlocks<L> blocks_from_jet(const MetricDerivs<L>& m, const Mat<Sc<L>>& ginv,
                                    ConnectionConvention conv) {
  using S = Sc<L>;
  const int n = m.g.rows;
  ConnectionBlocks<L> out{Rank3<S>(n), Rank3<S>(n)};
  // g^{chi nubar} = ginv(nu, chi).
  for (int chi = 0; chi < n; ++chi) {
    for (int mu = 0; mu < n; ++mu) {
      for (int lam = 0; lam < n; ++lam) {
        S p = lift<S>(0.0);
        S q = lift<S>(0.0);
        for (int nu = 0; nu < n; ++nu) {
          const S& inv = ginv(nu, chi);
          if (conv == ConnectionConvention::levi_civita) {
            p = p + inv * (m.holo[mu](lam, nu) + m.holo[lam](mu, nu)) * 0.5;
            q = q + inv * (m.anti[lam](mu, nu) - m.anti[nu](mu, lam)) * 0.5;
          } else {
            p = p + inv * m.holo[lam](mu, nu);
          }
        }
        out.pure(chi, mu, lam) = p;
        out.mixed(chi, mu, lam) = q;
      }
    }
  }
  return out;
}

}  // namespace

template <int L>
ConnectionBlocks<L> connection_blocks(const ManifoldSpec& spec, std::span<const Sc<L>> z,
                                      bool gauged, ConnectionConvention conv) {
  using S = Sc<L>;
  auto m = metric_derivs<L>(spec, z);
  Mat<S> ginv = inverse(m.g);
  auto blocks = blocks_from_jet<L>(m, ginv, conv);
  if (!gauged) return blocks;

  const int n = spec.dim();
  auto a = gauge_components<L>(spec, z);
  std::vector<S> abar(n);
  for (int mu = 0; mu < n; ++mu) abar[mu] = conj(a[mu]);
  // A^chi = g^{chi nubar} A_nubar
  std::vector<S> araised(n, lift<S>(0.0));
  for (int chi = 0; chi < n; ++chi)
    for (int nu = 0; nu < n; ++nu) araised[chi] = araised[chi] + ginv(nu, chi) * abar[nu];

  for (int chi = 0; chi < n; ++chi) {
    for (int mu = 0; mu < n; ++mu) {
      for (int lam = 0; lam < n; ++lam) {
        // pure: - (delta^chi_lam A_mu + delta^chi_mu A_lam)
        S corr = lift<S>(0.0);
        if (chi == lam) corr = corr + a[mu];
        if (chi == mu) corr = corr + a[lam];
        blocks.pure(chi, mu, lam) = blocks.pure(chi, mu, lam) - corr;
        // mixed: - g^{chi nubar} (g_{mu nubar} A_lambar - g_{mu lambar} A_nubar)
        S mcorr = m.g(mu, lam) * araised[chi];
        if (chi == mu) mcorr = mcorr - abar[lam];
        blocks.mixed(chi, mu, lam) = blocks.mixed(chi, mu, lam) + mcorr;
      }
    }
  }
  return blocks;
}

template <int L>
CurvatureData<L> curvature_at(const ManifoldSpec& spec, std::span<const Sc<L>> z) {
  using S = Sc<L>;
  const int n = spec.dim();
  const int m = 2 * n;
  auto base = connection_blocks<L>(spec, z, true);

  // Wirtinger derivatives of both blocks, [c] over holomorphic directions.
  std::vector<ConnectionBlocks<L>> dh, da;
  for (int c = 0; c < n; ++c) {
    auto zx = seed<S>(z, {c, false});
    auto zy = seed<S>(z, {c, true});
    auto bx = connection_blocks<L + 1>(spec, std::span<const Sc<L + 1>>(zx), true);
    auto by = connection_blocks<L + 1>(spec, std::span<const Sc<L + 1>>(zy), true);
    ConnectionBlocks<L> h{Rank3<S>(n), Rank3<S>(n)}, b{Rank3<S>(n), Rank3<S>(n)};
    for (std::size_t k = 0; k < h.pure.a.size(); ++k) {
      auto wp = wirtinger(bx.pure.a[k].d, by.pure.a[k].d);
      auto wm = wirtinger(bx.mixed.a[k].d, by.mixed.a[k].d);
      h.pure.a[k] = wp.holo;
      b.pure.a[k] = wp.anti;
      h.mixed.a[k] = wm.holo;
      b.mixed.a[k] = wm.anti;
    }
    dh.push_back(std::move(h));
    da.push_back(std::move(b));
  }

  auto flip = [n](int i) { return i < n ? i + n : i - n; };
  auto gamma = [&](int a, int b, int c) { return full_connection(base.pure, base.mixed, a, b, c); };
  // d_c Gamma^a_{bd}
  auto dgamma = [&](int c, int a, int b, int d) -> S {
    if (a < n) {
      const auto& blk = c < n ? dh[c] : da[c - n];
      return full_connection(blk.pure, blk.mixed, a, b, d);
    }
    int cf = flip(c);
    const auto& blk = cf < n ? dh[cf] : da[cf - n];
    return conj(full_connection(blk.pure, blk.mixed, a - n, flip(b), flip(d)));
  };

  CurvatureData<L> out;
  out.dim = n;
  out.riemann.assign(static_cast<std::size_t>(m) * m * m * m, lift<S>(0.0));
  auto idx = [m](int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * m + b) * m + c) * m + d;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        for (int d = c + 1; d < m; ++d) {
          S r = dgamma(c, a, b, d) - dgamma(d, a, b, c);
          for (int e = 0; e < m; ++e) {
            r = r + gamma(a, e, c) * gamma(e, b, d) - gamma(a, e, d) * gamma(e, b, c);
          }
          out.riemann[idx(a, b, c, d)] = r;
          out.riemann[idx(a, b, d, c)] = -r;
        }
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          out.riemann[idx(a + n, b, c, d)] = conj(out.riemann[idx(a, flip(b), flip(c), flip(d))]);

  out.ricci = Mat<S>(m, m);
  for (int b = 0; b < m; ++b) {
    for (int d = 0; d < m; ++d) {
      S s = lift<S>(0.0);
      for (int a = 0; a < m; ++a) s = s + out.riemann[idx(a, b, a, d)];
      out.ricci(b, d) = s;
    }
  }

  Mat<S> ginv = inverse(metric_matrix<L>(spec, z));
  S scalar = lift<S>(0.0);
  // g^{alpha betabar} = ginv(beta, alpha)
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be)
      scalar = scalar + ginv(be, al) * (out.ricci(al, be + n) + out.ricci(be + n, al));
  out.scalar = scalar;
  return out;
}

template ConnectionBlocks<0> connection_blocks<0>(const ManifoldSpec&, std::span<const Sc<0>>,
                                                  bool, ConnectionConvention);
template ConnectionBlocks<1> connection_blocks<1>(const ManifoldSpec&, std::span<const Sc<1>>,
                                                  bool, ConnectionConvention);
template ConnectionBlocks<2> connection_blocks<2>(const ManifoldSpec&, std::span<const Sc<2>>,
                                                  bool, ConnectionConvention);
template ConnectionBlocks<3> connection_blocks<3>(const ManifoldSpec&, std::span<const Sc<3>>,
                                                  bool, ConnectionConvention);
template CurvatureData<0> curvature_at<0>(const ManifoldSpec&, std::span<const Sc<0>>);
template CurvatureData<1> curvature_at<1>(const ManifoldSpec&, std::span<const Sc<1>>);

// Level-0 API --------------------------------------------------------------------------

namespace {

ConnectionCoefficients make_coefficients(const ManifoldSpec& spec, const ComplexPoint& p,
                                         bool gauged, ConnectionConvention conv) {
  check_point(spec, p);
  auto b = connection_blocks<0>(spec, p.span(), gauged, conv);
  for (const auto* block : {&b.pure, &b.mixed}) {
    for (Complex c : block->a) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw NonFiniteError("connection coefficients are not finite");
      }
    }
  }
  ConnectionCoefficients out;
  out.dim = spec.dim();
  out.pure = std::move(b.pure);
  out.mixed = std::move(b.mixed);
  out.point = p;
  out.gauged = gauged;
  out.convention = conv;
  return out;
}

}  // namespace

ConnectionCoefficients base_christoffel(const ManifoldSpec& spec, const ComplexPoint& p,
                                        ConnectionConvention conv) {
  return make_coefficients(spec, p, false, conv);
}

ConnectionCoefficients weyl_christoffel(const ManifoldSpec& spec, const ComplexPoint& p,
                                        ConnectionConvention conv) {
  return make_coefficients(spec, p, true, conv);
}

double StructureDerivative::max_abs() const {
  double m = 0.0;
  for (Complex c : a) m = std::max(m, std::abs(c));
  return m;
}

StructureDerivative covariant_derivative_F(const ManifoldSpec& spec, const ComplexPoint& p) {
  auto conn = weyl_christoffel(spec, p);
  const int n = spec.dim();
  const int m = 2 * n;
  auto f = [n](int i) { return i < n ? Complex(0.0, 1.0) : Complex(0.0, -1.0); };
  StructureDerivative out;
  out.dim = n;
  out.a.assign(static_cast<std::size_t>(m) * m * m, Complex{});
  // F is constant, so nabla_k F^i_j = Gamma^i_{jk} (F_j - F_i).
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.a[(static_cast<std::size_t>(k) * m + i) * m + j] = conn.full(i, j, k) * (f(j) - f(i));
  return out;
}

CurvatureTensors curvature(const ManifoldSpec& spec, const ComplexPoint& p,
                           const CurvatureOptions& options) {
  check_point(spec, p);
  auto c = curvature_at<0>(spec, p.span());
  CurvatureTensors out;
  out.dim = c.dim;
  out.riemann = std::move(c.riemann);
  out.ricci_full = to_eigen(c.ricci);
  const int n = spec.dim();
  out.ricci = out.ricci_full.topRightCorner(n, n);
  out.scalar = c.scalar.real();
  out.scalar_imag = c.scalar.imag();
  out.point = p;
  if (!std::isfinite(out.scalar)) throw NonFiniteError("scalar curvature is not finite");
  if (std::abs(out.scalar_imag) > options.imag_tolerance) {
    throw ToleranceError("scalar curvature has imaginary residue " +
                         std::to_string(out.scalar_imag));
  }
  return out;
}

double scalar_curvature(const ManifoldSpec& spec, const ComplexPoint& p) {
  return curvature(spec, p).scalar;
}

ScalarField scalar_curvature_field(const ManifoldSpec& spec) {
  return ScalarField::make<1>([spec]<class S>(std::span<const S> z) -> S {
    return re(curvature_at<level_of_v<S>>(spec, z).scalar);
  });
}

}  // namespace wk
