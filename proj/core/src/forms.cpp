#include "wk/forms.hpp"

#include <algorithm>
#include <cmath>

namespace wk {

int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  const std::size_t m = idx.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j + 1 < m - i; ++j) {
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (idx[j] == idx[j + 1]) return 0;
  }
  return sign;
}

PForm::PForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw DimensionError("form dimension must be >= 1");
  if (degree < 0) throw DegreeOverflowError("form degree must be non-negative");
}

void PForm::add(IndexTuple indices, const ScalarField& coeff) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw DimensionError("index tuple length does not match the form degree");
  }
  for (int i : indices) {
    if (i < 0 || i >= 2 * dim_) throw DimensionError("form index out of range");
  }
  int sign = sort_with_sign(indices);
  if (sign == 0) return;
  ScalarField c = sign > 0 ? coeff : coeff.scaled(-1.0);
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    terms_.emplace(std::move(indices), std::move(c));
  } else {
    it->second = it->second + c;
  }
}

std::map<IndexTuple, Complex> PForm::evaluate(const ComplexPoint& p) const {
  if (p.dim() != dim_) throw DimensionError("point dimension does not match form");
  std::map<IndexTuple, Complex> out;
  for (const auto& [idx, f] : terms_) {
    Complex v = f(p.span());
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteError("form coefficient is not finite");
    }
    out.emplace(idx, v);
  }
  return out;
}

double PForm::max_abs(const ComplexPoint& p) const {
  double m = 0.0;
  for (const auto& [idx, v] : evaluate(p)) m = std::max(m, std::abs(v));
  return m;
}

double PForm::max_abs(std::span<const ComplexPoint> samples) const {
  double m = 0.0;
  for (const auto& p : samples) m = std::max(m, max_abs(p));
  return m;
}

PForm PForm::conjugated() const {
  PForm out(dim_, degree_);
  for (const auto& [idx, f] : terms_) {
    IndexTuple flipped = idx;
    for (int& i : flipped) i = i < dim_ ? i + dim_ : i - dim_;
    out.add(flipped, f.conjugated());
  }
  out.self_conjugate_ = self_conjugate_;
  return out;
}

PForm PForm::scaled(Complex c) const {
  PForm out(dim_, degree_);
  for (const auto& [idx, f] : terms_) out.terms_.emplace(idx, f.scaled(c));
  out.self_conjugate_ = self_conjugate_ && c.imag() == 0.0;
  return out;
}

int PForm::depth() const {
  int d = kMaxLevel;
  for (const auto& [idx, f] : terms_) d = std::min(d, f.depth());
  return d;
}

PForm operator+(const PForm& a, const PForm& b) {
  if (a.dim_ != b.dim_ || a.degree_ != b.degree_) {
    throw DimensionError("cannot add forms of different dimension or degree");
  }
  PForm out = a;
  for (const auto& [idx, f] : b.terms_) out.add(idx, f);
  out.self_conjugate_ = a.self_conjugate_ && b.self_conjugate_;
  return out;
}

PForm operator-(const PForm& a, const PForm& b) { return a + b.scaled(-1.0); }

PForm zero_form(int dim, const ScalarField& f) {
  PForm out(dim, 0);
  out.add({}, f);
  return out;
}

PForm wedge(const PForm& a, const PForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("wedge of forms with different dimension");
  const int degree = a.degree() + b.degree();
  if (degree > 2 * a.dim()) {
    throw DegreeOverflowError("wedge product degree exceeds 2n");
  }
  PForm out(a.dim(), degree);
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [ib, fb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(std::move(idx), fa * fb);
    }
  }
  out.set_self_conjugate(a.self_conjugate() && b.self_conjugate());
  return out;
}

PForm exterior_derivative(const PForm& a) {
  const int n = a.dim();
  PForm out(n, a.degree() + 1);
  if (a.degree() + 1 > 2 * n) return out;
  for (const auto& [idx, f] : a.terms()) {
    for (int c = 0; c < 2 * n; ++c) {
      if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
      IndexTuple k{c};
      k.insert(k.end(), idx.begin(), idx.end());
      out.add(std::move(k), f.derivative(c % n, c >= n));
    }
  }
  out.set_self_conjugate(a.self_conjugate());
  return out;
}

PForm gauge_form(const ManifoldSpec& spec) {
  const int n = spec.dim();
  PForm out(n, 1);
  for (int mu = 0; mu < n; ++mu) {
    auto a = ScalarField::make<kMaxLevel>([spec, mu]<class S>(std::span<const S> z) -> S {
      return gauge_components<level_of_v<S>>(spec, z)[mu];
    });
    out.add({mu}, a);
    out.add({n + mu}, a.conjugated());
  }
  out.set_self_conjugate(true);
  return out;
}

PForm fundamental_form(const ManifoldSpec& spec) {
  const int n = spec.dim();
  PForm out(n, 2);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      out.add({mu, n + nu},
              ScalarField::make<kMaxLevel>([spec, mu, nu]<class S>(std::span<const S> z) -> S {
                return metric_matrix<level_of_v<S>>(spec, z)(mu, nu) * Complex(0.0, 2.0);
              }));
    }
  }
  out.set_self_conjugate(true);
  return out;
}

GaugeThreeForm gauge_three_form(const ManifoldSpec& spec, std::span<const ComplexPoint> samples) {
  const int n = spec.dim();
  PForm f = fundamental_form(spec);
  GaugeThreeForm out{exterior_derivative(f), PForm(n, 3), 0.0};
  if (3 <= 2 * n) out.wedge_form = wedge(gauge_form(spec), f).scaled(2.0);
  PForm diff = out.h - out.wedge_form;
  out.max_discrepancy = diff.max_abs(samples);
  return out;
}

PForm semi_weyl_form(const ManifoldSpec& spec, const ScalarField& phi,
                     std::span<const ComplexPoint> samples, double threshold) {
  double peak = 0.0;
  for (const auto& p : samples) peak = std::max(peak, std::abs(phi(p.span())));
  if (!(peak > threshold)) {
    throw DegenerateScalarError("phi vanishes on every sample point");
  }
  PForm out = wedge(zero_form(spec.dim(), phi), fundamental_form(spec));
  out.set_self_conjugate(true);
  return out;
}

}  // namespace wk
